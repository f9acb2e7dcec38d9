#include "dphase/rayleigh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTinyDenominator = 1e-300;
constexpr double kRoundingBand = 64.0 * std::numeric_limits<double>::epsilon();

enum class Objective { r1, r2, energy };

struct Eval {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::VectorXd residual;
};

/// One of the three scalar objectives over interior nodal vectors.
class ObjectiveFn {
 public:
  ObjectiveFn(const ProblemSpec& spec, Objective kind, double lambda = 0.0)
      : spec_(spec), kind_(kind), lambda_(lambda) {}

  /// nullopt when the point is outside the objective's domain (zero
  /// denominator or a non-finite value).
  std::optional<Eval> operator()(const Eigen::VectorXd& x, bool with_gradient) const {
    GridFunction u(spec_.mesh_ptr(), x);
    unsigned parts = kValues;
    if (with_gradient)
      parts = kind_ == Objective::r2 ? kSecondQuotientGradients : kEnergyGradients;
    Assembly a;
    try {
      a = assemble(u, spec_, parts);
    } catch (const NonFiniteValue&) {
      return std::nullopt;
    }
    Eval out;
    switch (kind_) {
      case Objective::r1: {
        const double den = a.energy.e2_value;
        if (!(den > kTinyDenominator)) return std::nullopt;
        out.value = a.energy.e1() / den;
        if (with_gradient) {
          out.residual = a.d_e1 - out.value * a.d_e2;
          out.gradient = out.residual / den;
        }
        break;
      }
      case Objective::r2: {
        if (!(a.den2 > kTinyDenominator)) return std::nullopt;
        out.value = a.num2 / a.den2;
        if (with_gradient) {
          out.residual = a.d_num2 - out.value * a.d_den2;
          out.gradient = out.residual / a.den2;
        }
        break;
      }
      case Objective::energy:
        out.value = a.energy.e1() - lambda_ * a.energy.e2_value;
        if (with_gradient) {
          out.residual = a.d_e1 - lambda_ * a.d_e2;
          out.gradient = out.residual;
        }
        break;
    }
    if (!std::isfinite(out.value)) return std::nullopt;
    if (with_gradient && !out.gradient.allFinite()) return std::nullopt;
    return out;
  }

  double residual_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& residual) const {
    const double m = residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
    if (m == 0.0) return 0.0;
    return m / (1.0 + spec_.norm_p2(GridFunction(spec_.mesh_ptr(), x)));
  }

  Objective kind() const { return kind_; }

 private:
  const ProblemSpec& spec_;
  Objective kind_;
  double lambda_;
};

/// Inverse of a weighted Dirichlet stiffness matrix, sum_e a_e int_e Dphi_i.Dphi_j,
/// the metric of the descent. Unit weights give the Laplace stiffness.
class Preconditioner {
 public:
  explicit Preconditioner(const Mesh& mesh) : mesh_(mesh) {
    const auto n = static_cast<Eigen::Index>(mesh.interior_count());
    matrix_.resize(n, n);
    update(std::vector<double>(mesh.element_count(), 1.0));
  }

  void update(const std::vector<double>& weights) {
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t e = 0; e < mesh_.element_count(); ++e) {
      const Element& el = mesh_.element(e);
      for (int a = 0; a < el.node_count; ++a) {
        const int ia = mesh_.interior_index(static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(a)]));
        if (ia < 0) continue;
        for (int b = 0; b < el.node_count; ++b) {
          const int ib = mesh_.interior_index(static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(b)]));
          if (ib < 0) continue;
          const auto& ga = el.shape_gradient[static_cast<std::size_t>(a)];
          const auto& gb = el.shape_gradient[static_cast<std::size_t>(b)];
          t.emplace_back(ia, ib, weights[e] * el.measure * (ga[0] * gb[0] + ga[1] * gb[1]));
        }
      }
    }
    matrix_.setFromTriplets(t.begin(), t.end());
    if (!analyzed_) {
      solver_.analyzePattern(matrix_);
      analyzed_ = true;
    }
    solver_.factorize(matrix_);
    if (solver_.info() != Eigen::Success) throw ConvergenceError("stiffness factorization failed");
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& g) const { return solver_.solve(g); }

 private:
  const Mesh& mesh_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> solver_;
  bool analyzed_ = false;
};

/// Per-element coefficient (phi + psi) + max(0, xi (phi' + psi')) at the
/// current gradient, averaged over the quadrature points and clipped to
/// [1e-8, 1] times its maximum.
std::vector<double> metric_weights(const ProblemSpec& spec, const Eigen::VectorXd& x) {
  const Mesh& m = spec.mesh();
  const GridFunction u(spec.mesh_ptr(), x);
  const std::size_t nq = m.quad_per_element();
  const auto& pts = m.quad_points();
  const auto& wts = m.quad_weights();
  std::vector<double> out(m.element_count(), 0.0);
  double top = 0.0;
  for (std::size_t e = 0; e < m.element_count(); ++e) {
    const auto g = u.gradient(e);
    const double xi = std::hypot(g[0], g[1]);
    double acc = 0.0;
    if (xi > 0.0) {
      for (std::size_t q = 0; q < nq; ++q) {
        const std::size_t f = e * nq + q;
        const double k = spec.phi().value(pts[f], spec.p1_at_quad()[f], xi) +
                         spec.psi().value(pts[f], spec.p2_at_quad()[f], xi);
        const double dk = spec.phi().xi_derivative(pts[f], spec.p1_at_quad()[f], xi) +
                          spec.psi().xi_derivative(pts[f], spec.p2_at_quad()[f], xi);
        acc += wts[f] * (k + std::max(0.0, xi * dk));
      }
      acc /= m.element(e).measure;
    }
    out[e] = std::isfinite(acc) ? acc : -1.0;
    if (std::isfinite(acc)) top = std::max(top, acc);
  }
  if (!(top > 0.0)) return std::vector<double>(m.element_count(), 1.0);
  for (auto& w : out) w = w < 0.0 ? top : std::clamp(w, 1e-8 * top, top);
  return out;
}

struct DescentOutcome {
  Eigen::VectorXd x;
  double value = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  History history;
};

/// Limited-memory quasi-Newton descent in a weighted stiffness metric with
/// Armijo backtracking. When Armijo fails because the objective is at its
/// rounding floor, a step is still taken if it stays within a few ulps of the
/// current value and lowers the residual.
DescentOutcome descend(const ObjectiveFn& f, const ProblemSpec& spec, Eigen::VectorXd x,
                       const QuotientConfig& cfg, Preconditioner& pre) {
  constexpr int kMetricRefresh = 10;
  DescentOutcome out;
  auto cur = f(x, true);
  if (!cur) throw ConvergenceError("descent started outside the objective's domain");
  double res = f.residual_norm(x, cur->residual);
  out.history.push_back({0, cur->value, res, 0.0});

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  double gamma = 1.0;
  int stall = 0;
  int k = 0;
  while (k < cfg.max_iterations && res >= cfg.residual_tol) {
    ++k;
    if ((k - 1) % kMetricRefresh == 0) pre.update(metric_weights(spec, x));
    // two-loop recursion
    Eigen::VectorXd q = cur->gradient;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    Eigen::VectorXd d = gamma * pre.apply(q);
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(d);
      d += s_hist[i] * (alpha[i] - beta);
    }
    d = -d;
    double slope = cur->gradient.dot(d);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -pre.apply(cur->gradient);
      slope = cur->gradient.dot(d);
      if (!(slope < 0.0)) break;
    }

    double step = cfg.initial_step;
    std::optional<Eval> trial;
    std::optional<Eval> next;
    Eigen::VectorXd x_new;
    for (int ls = 0; ls < 80; ++ls) {
      x_new = x + step * d;
      trial = f(x_new, false);
      if (trial && trial->value <= cur->value + cfg.sufficient_decrease * step * slope) {
        next = f(x_new, true);
        break;
      }
      step *= cfg.armijo_factor;
    }
    if (!next) {
      // Near the minimum the decrease falls below the rounding of the
      // objective; accept a step that stays within that noise band and
      // lowers the residual.
      const double band = kRoundingBand * std::max(1.0, std::abs(cur->value));
      step = cfg.initial_step;
      for (int ls = 0; ls < 12 && !next; ++ls, step *= cfg.armijo_factor) {
        x_new = x + step * d;
        auto cand = f(x_new, true);
        if (cand && cand->value <= cur->value + band &&
            f.residual_norm(x_new, cand->residual) < res)
          next = std::move(cand);
      }
    }
    if (!next) {
      if (!s_hist.empty()) {
        // retry from a steepest descent step with a fresh memory
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        gamma = 1.0;
        --k;
        continue;
      }
      break;
    }

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = next->gradient - cur->gradient;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm() && sy > 0.0) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > cfg.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      const double yhy = y.dot(pre.apply(y));
      if (yhy > 0.0) gamma = sy / yhy;
    }

    const double scale = std::max({std::abs(cur->value), std::abs(next->value), 1e-300});
    const double rel = std::abs(cur->value - next->value) / scale;
    const double prev_res = res;
    x = std::move(x_new);
    cur = std::move(next);
    res = f.residual_norm(x, cur->residual);
    out.history.push_back({k, cur->value, res, step});
    // stalled: no objective progress and no residual progress
    stall = (rel < cfg.relative_change_tol && res > 0.9 * prev_res) ? stall + 1 : 0;
    if (stall >= cfg.stall_window) break;
  }
  out.x = std::move(x);
  out.value = cur->value;
  out.residual_norm = res;
  out.iterations = k;
  return out;
}

/// Golden-section minimization of t -> f(t d) over log10 t in [-4, 4] after
/// a coarse scan. Returns the best scale found and its value.
std::pair<double, double> scale_search(const ObjectiveFn& f, const Eigen::VectorXd& d) {
  auto val = [&](double log_t) {
    auto e = f(std::pow(10.0, log_t) * d, false);
    return e ? e->value : std::numeric_limits<double>::infinity();
  };
  constexpr int kScan = 81;
  constexpr double kLo = -4.0;
  constexpr double kHi = 4.0;
  const double h = (kHi - kLo) / (kScan - 1);
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double v = val(kLo + i * h);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = kLo + std::max(0, best - 1) * h;
  double b = kLo + std::min(kScan - 1, best + 1) * h;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = val(x1);
  double f2 = val(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = val(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = val(x2);
    }
  }
  double log_t = kLo + best * h;
  if (std::min(f1, f2) < best_v) {
    log_t = f1 < f2 ? x1 : x2;
    best_v = std::min(f1, f2);
  }
  return {std::pow(10.0, log_t), best_v};
}

Eigen::VectorXd normalized(const Eigen::VectorXd& v) {
  const double m = v.cwiseAbs().maxCoeff();
  return m > 0.0 ? Eigen::VectorXd(v / m) : v;
}

// Uniform in [-1, 1), identical on every platform.
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

struct RestartRun {
  DescentOutcome outcome;
  double scale;
};

QuotientResult minimize_quotient(const ProblemSpec& spec, const QuotientConfig& cfg,
                                 Objective kind, const std::optional<GridFunction>& warm_start) {
  const ObjectiveFn f(spec, kind);
  Preconditioner pre(spec.mesh());

  std::vector<Eigen::VectorXd> starts;
  if (warm_start) starts.push_back(warm_start->values());
  for (auto& d : start_directions(spec.mesh_ptr(), cfg.restarts, cfg.seed))
    starts.push_back(d.values());

  QuotientResult result{std::numeric_limits<double>::infinity(),
                        GridFunction(spec.mesh_ptr()),
                        kNaN,
                        0,
                        0,
                        -1,
                        {}};
  for (std::size_t i = 0; i < starts.size(); ++i) {
    Eigen::VectorXd x0 = normalized(starts[i]);
    if (x0.isZero(0.0)) continue;
    const auto [t, v] = scale_search(f, x0);
    if (!std::isfinite(v)) continue;
    auto run = descend(f, spec, t * x0, cfg, pre);
    result.iterations += run.iterations;
    ++result.restarts_used;
    const bool ok = run.residual_norm <= cfg.converged_tol;
    if (ok && run.value < result.value) {
      result.value = run.value;
      result.minimizer = GridFunction(spec.mesh_ptr(), run.x);
      result.residual_norm = run.residual_norm;
      result.best_restart = static_cast<int>(i);
    }
    result.histories.push_back(std::move(run.history));
  }
  if (result.best_restart < 0)
    throw ConvergenceError(std::string("no restart of the ") +
                           (kind == Objective::r1 ? "first" : "second") +
                           " Rayleigh quotient minimization converged");
  return result;
}

}  // namespace

void write_history_csv(std::ostream& out, const History& history) {
  out << "iter,objective,residual_norm,step_size\n";
  for (const auto& h : history)
    out << h.iter << ',' << format_double(h.objective) << ',' << format_double(h.residual_norm)
        << ',' << format_double(h.step_size) << '\n';
}

std::string to_string(EigenStatus s) {
  switch (s) {
    case EigenStatus::converged: return "converged";
    case EigenStatus::trivial_only: return "trivial_only";
    case EigenStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

double r1(const GridFunction& u, const ProblemSpec& spec) {
  const auto e = energies(u, spec);
  if (e.e2_value == 0.0) throw ZeroDenominator("R1 is undefined for the zero function");
  return e.e1() / e.e2_value;
}

double r2(const GridFunction& u, const ProblemSpec& spec) {
  const auto a = assemble(u, spec, kValues);
  if (a.den2 == 0.0) throw ZeroDenominator("R2 is undefined for the zero function");
  return a.num2 / a.den2;
}

std::vector<GridFunction> start_directions(const MeshPtr& mesh, int count, std::uint64_t seed) {
  std::vector<GridFunction> out;
  const Domain& dom = mesh->domain();
  // lowest modes first
  std::vector<std::array<int, 2>> modes;
  if (dom.dimension() == 1) {
    for (int k = 1; k <= 4; ++k) modes.push_back({k, 0});
  } else {
    modes = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  }
  const int n_modes = std::min<int>(count, static_cast<int>(modes.size()));
  for (int m = 0; m < n_modes; ++m) {
    const auto mode = modes[static_cast<std::size_t>(m)];
    out.push_back(interpolate(
        [&](const Point& x) {
          const auto& ax = dom.axis(0);
          double v = std::sin(mode[0] * std::numbers::pi * (x[0] - ax.a) / ax.length());
          if (dom.dimension() == 2) {
            const auto& ay = dom.axis(1);
            v *= std::sin(mode[1] * std::numbers::pi * (x[1] - ay.a) / ay.length());
          }
          return v;
        },
        mesh));
  }
  std::mt19937_64 rng(seed);
  for (int i = n_modes; i < count; ++i) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(mesh->interior_count()));
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = uniform_pm1(rng);
    out.emplace_back(mesh, std::move(v));
  }
  return out;
}

QuotientResult minimize_r1(const ProblemSpec& spec, const QuotientConfig& cfg,
                           const std::optional<GridFunction>& warm_start) {
  return minimize_quotient(spec, cfg, Objective::r1, warm_start);
}

QuotientResult minimize_r2(const ProblemSpec& spec, const QuotientConfig& cfg,
                           const std::optional<GridFunction>& warm_start) {
  return minimize_quotient(spec, cfg, Objective::r2, warm_start);
}

EigenResult solve_at(double lambda, const ProblemSpec& spec, const QuotientConfig& cfg,
                     const std::optional<GridFunction>& warm_start) {
  const ObjectiveFn f(spec, Objective::energy, lambda);
  Preconditioner pre(spec.mesh());

  std::vector<Eigen::VectorXd> starts;
  if (warm_start) starts.push_back(warm_start->values());
  for (auto& d : start_directions(spec.mesh_ptr(), cfg.restarts, cfg.seed))
    starts.push_back(d.values());

  struct Candidate {
    DescentOutcome run;
    double norm;
    std::size_t index;
  };
  std::vector<Candidate> runs;
  EigenResult result{lambda, GridFunction(spec.mesh_ptr()), kNaN, kNaN, kNaN, kNaN, 0, 0,
                     EigenStatus::max_iter, {}};

  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (starts[i].isZero(0.0)) continue;
    Eigen::VectorXd x0;
    if (warm_start && i == 0) {
      x0 = starts[i];
    } else {
      // Start where N(t d) is negative when such a t exists, else from d.
      const Eigen::VectorXd d = normalized(starts[i]);
      const auto [t, v] = scale_search(f, d);
      x0 = v < 0.0 ? Eigen::VectorXd(t * d) : d;
    }
    auto run = descend(f, spec, std::move(x0), cfg, pre);
    result.iterations += run.iterations;
    ++result.restarts_used;
    const double norm = spec.norm_p2(GridFunction(spec.mesh_ptr(), run.x));
    result.histories.push_back(run.history);
    runs.push_back({std::move(run), norm, i});
  }

  const Candidate* best = nullptr;
  bool all_trivial = !runs.empty();
  for (const auto& c : runs) {
    const bool trivial = c.norm < cfg.nontriviality_floor;
    all_trivial = all_trivial && trivial;
    const bool converged = c.run.residual_norm <= cfg.converged_tol;
    if (!trivial && converged && (!best || c.run.value < best->run.value)) best = &c;
  }
  if (best) {
    result.status = EigenStatus::converged;
  } else if (all_trivial) {
    result.status = EigenStatus::trivial_only;
    best = &runs.front();
  } else {
    result.status = EigenStatus::max_iter;
    for (const auto& c : runs)
      if (!best || c.run.value < best->run.value) best = &c;
  }
  if (!best) return result;

  result.u = GridFunction(spec.mesh_ptr(), best->run.x);
  result.residual_norm = best->run.residual_norm;
  result.objective = best->run.value;
  if (result.status != EigenStatus::trivial_only && !result.u.is_zero()) {
    result.r1_value = r1(result.u, spec);
    result.r2_value = r2(result.u, spec);
  }
  return result;
}

std::pair<int, double> sample_rays(double lambda, const ProblemSpec& spec, int rays,
                                   std::uint64_t seed) {
  const ObjectiveFn f(spec, Objective::energy, lambda);
  const MeshPtr& mesh = spec.mesh_ptr();
  const Domain& dom = mesh->domain();
  std::mt19937_64 rng(seed);
  int negative = 0;
  double min_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < rays; ++k) {
    GridFunction v(mesh);
    if (k % 2 == 0) {
      for (Eigen::Index j = 0; j < v.values().size(); ++j) v.values()[j] = uniform_pm1(rng);
    } else {
      // smooth ray: random combination of the four lowest modes
      std::array<double, 4> c{};
      for (auto& ci : c) ci = uniform_pm1(rng);
      v = interpolate(
          [&](const Point& x) {
            const auto& ax = dom.axis(0);
            const double sx = (x[0] - ax.a) / ax.length();
            double sy = 0.5;
            if (dom.dimension() == 2) sy = (x[1] - dom.axis(1).a) / dom.axis(1).length();
            double s = 0.0;
            for (int m = 0; m < 4; ++m)
              s += c[static_cast<std::size_t>(m)] * std::sin((m + 1) * std::numbers::pi * sx);
            return dom.dimension() == 2 ? s * std::sin(std::numbers::pi * sy) : s;
          },
          mesh);
    }
    const double nv = spec.norm_p2(v);
    if (nv == 0.0) continue;
    const Eigen::VectorXd d = v.values() / nv;
    bool neg = false;
    for (int i = 0; i <= 24; ++i) {
      const double t = std::pow(10.0, -3.0 + 0.25 * i);
      auto e = f(t * d, false);
      if (!e) continue;
      min_value = std::min(min_value, e->value);
      if (e->value < 0.0) neg = true;
    }
    negative += neg ? 1 : 0;
  }
  return {negative, min_value};
}

CertificateReport certify_nonexistence(double lambda, const ProblemSpec& spec,
                                       const QuotientConfig& cfg, double lambda_lower) {
  if (!(lambda < lambda_lower))
    throw PreconditionError("nonexistence can only be certified below lambda_* = " +
                            format_double(lambda_lower));
  CertificateReport rep;
  rep.lambda = lambda;
  rep.lambda_lower = lambda_lower;
  rep.gap = lambda_lower - lambda;

  // R(u).u = Num_2(u) - lambda Den_2(u) on random vectors
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < 8; ++k) {
    GridFunction u(spec.mesh_ptr());
    const double amp = std::pow(10.0, -1.0 + 0.5 * k);
    for (Eigen::Index j = 0; j < u.values().size(); ++j) u.values()[j] = amp * uniform_pm1(rng);
    const auto a = assemble(u, spec, kEnergyGradients);
    const Eigen::VectorXd res = a.d_e1 - lambda * a.d_e2;
    const double lhs = res.dot(u.values());
    const double rhs = a.num2 - lambda * a.den2;
    const double scale = std::max(std::abs(a.num2) + std::abs(lambda * a.den2), 1e-300);
    rep.identity_error = std::max(rep.identity_error, std::abs(lhs - rhs) / scale);
  }

  rep.rays = 200;
  std::tie(rep.negative_rays, rep.min_ray_objective) = sample_rays(lambda, spec, rep.rays, cfg.seed);
  rep.certified = rep.gap > 0.0 && rep.identity_error <= 1e-10;
  return rep;
}

CertificateReport certify_nonexistence(double lambda, const ProblemSpec& spec,
                                       const QuotientConfig& cfg) {
  const auto lower = minimize_r2(spec, cfg);
  return certify_nonexistence(lambda, spec, cfg, lower.value);
}

std::string CertificateReport::summary() const {
  std::ostringstream os;
  os << (certified ? "certified" : "not certified") << ": lambda = " << format_double(lambda)
     << " < lambda_* = " << format_double(lambda_lower) << " (gap " << format_double(gap)
     << "); any eigenfunction u would satisfy lambda = R2(u) >= lambda_*; identity error "
     << format_double(identity_error) << "; rays with N < 0: " << negative_rays << "/" << rays
     << " (min N = " << format_double(min_ray_objective) << ")";
  return os.str();
}

}  // namespace dphase
