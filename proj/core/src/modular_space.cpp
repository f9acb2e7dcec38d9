#include "dphase/modular_space.hpp"

#include <cmath>

#include "dphase/errors.hpp"

namespace dphase {
namespace {

constexpr int kMaxDoublings = 200;

QuadSamples samples_of(const std::vector<double>& values, const std::vector<double>& exponent,
                       const Mesh& mesh) {
  return {values, exponent, mesh.quad_weights()};
}

}  // namespace

double modular(const QuadSamples& f) {
  double sum = 0.0;
  for (std::size_t q = 0; q < f.values.size(); ++q) {
    const double a = std::abs(f.values[q]);
    if (a != 0.0) sum += f.weights[q] * std::pow(a, f.exponent[q]);
  }
  return sum;
}

double modular(const GridFunction& u, const ExponentField& p) {
  const auto vals = u.at_quad();
  const auto expo = p.sample(u.mesh().quad_points());
  return modular(samples_of(vals, expo, u.mesh()));
}

double luxemburg_norm(const QuadSamples& f) {
  // rho(f / lambda) = sum w |f|^p lambda^{-p}, evaluated in log form.
  std::vector<double> log_abs;
  std::vector<double> expo;
  std::vector<double> wts;
  for (std::size_t q = 0; q < f.values.size(); ++q) {
    const double a = std::abs(f.values[q]);
    if (a == 0.0 || f.weights[q] == 0.0) continue;
    log_abs.push_back(std::log(a));
    expo.push_back(f.exponent[q]);
    wts.push_back(f.weights[q]);
  }
  if (log_abs.empty()) return 0.0;

  auto rho = [&](double lambda) {
    const double ll = std::log(lambda);
    double s = 0.0;
    for (std::size_t q = 0; q < log_abs.size(); ++q) s += wts[q] * std::exp(expo[q] * (log_abs[q] - ll));
    return s;
  };

  double lo = 1.0;
  double hi = 1.0;
  if (rho(1.0) > 1.0) {
    int k = 0;
    while (rho(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++k > kMaxDoublings) throw ConvergenceError("Luxemburg norm: no upper bracket");
    }
  } else {
    int k = 0;
    while (rho(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
      if (++k > kMaxDoublings) throw ConvergenceError("Luxemburg norm: no lower bracket");
    }
  }
  // rho(lo) > 1 >= rho(hi); bisect down to the resolution of doubles.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi) break;
    (rho(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const GridFunction& u, const ExponentField& p) {
  const auto vals = u.at_quad();
  const auto expo = p.sample(u.mesh().quad_points());
  return luxemburg_norm(samples_of(vals, expo, u.mesh()));
}

double gradient_luxemburg_norm(const GridFunction& u, const ExponentField& p) {
  const auto vals = u.gradient_magnitude_at_quad();
  const auto expo = p.sample(u.mesh().quad_points());
  return luxemburg_norm(samples_of(vals, expo, u.mesh()));
}

double sobolev_norm(const GridFunction& u, const ExponentField& p) {
  return luxemburg_norm(u, p) + gradient_luxemburg_norm(u, p);
}

HolderPairing holder_pairing(const GridFunction& u, const GridFunction& v, const ExponentField& p) {
  if (u.mesh_ptr() != v.mesh_ptr()) throw DomainError("Hölder pairing needs a shared mesh");
  const Mesh& m = u.mesh();
  const auto uq = u.at_quad();
  const auto vq = v.at_quad();
  const auto pq = p.sample(m.quad_points());
  std::vector<double> pc(pq.size());
  for (std::size_t q = 0; q < pq.size(); ++q) pc[q] = conjugate(pq[q]);

  double inner = 0.0;
  for (std::size_t q = 0; q < uq.size(); ++q) inner += m.quad_weights()[q] * uq[q] * vq[q];

  const double constant = 1.0 / p.p_minus() + 1.0 / conjugate(p.p_plus());
  const double nu = luxemburg_norm(samples_of(uq, pq, m));
  const double nv = luxemburg_norm(samples_of(vq, pc, m));
  return {std::abs(inner), constant * nu * nv};
}

}  // namespace dphase
