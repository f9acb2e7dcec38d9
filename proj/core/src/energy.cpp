#include "dphase/energy.hpp"

#include <cmath>
#include <ostream>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"
#include "dphase/modular_space.hpp"

namespace dphase {

ValidationReport validate_problem(const KernelSpec& phi, const KernelSpec& psi,
                                  const KernelSpec& theta, const GridFunction& weight,
                                  const PowerPair& rs) {
  ValidationReport rep =
      validate_ordering(phi.exponent(), psi.exponent(), theta.exponent(), rs);
  rep.merge(validate_subcritical(phi.exponent(), psi.exponent()));
  if (!(rs.r <= rs.s)) rep.fail("powers: r <= s violated");
  if (!(rs.r >= 2.0)) rep.fail("powers: r >= 2 is required for a regular reaction term");
  if (!std::isfinite(weight.max_abs())) rep.fail("weight: not bounded");
  return rep;
}

ProblemSpec::ProblemSpec(MeshPtr mesh, KernelSpec phi, KernelSpec psi, KernelSpec theta,
                         GridFunction weight, PowerPair rs)
    : mesh_(std::move(mesh)),
      phi_(std::move(phi)),
      psi_(std::move(psi)),
      theta_(std::move(theta)),
      weight_(std::move(weight)),
      rs_(rs) {
  if (weight_.mesh_ptr() != mesh_) throw DomainError("weight must live on the problem mesh");
  const auto& pts = mesh_->quad_points();
  p1_ = phi_.exponent().sample(pts);
  p2_ = psi_.exponent().sample(pts);
  p3_ = theta_.exponent().sample(pts);
  w_ = weight_.at_quad();
}

ProblemSpec ProblemSpec::create(MeshPtr mesh, KernelSpec phi, KernelSpec psi, KernelSpec theta,
                                GridFunction weight, PowerPair rs) {
  const auto rep = validate_problem(phi, psi, theta, weight, rs);
  if (!rep.pass) {
    std::string msg = "invalid problem:";
    for (const auto& f : rep.failures) msg += "\n  " + f;
    throw DomainError(msg);
  }
  return ProblemSpec(std::move(mesh), std::move(phi), std::move(psi), std::move(theta),
                     std::move(weight), rs);
}

ProblemSpec ProblemSpec::unchecked(MeshPtr mesh, KernelSpec phi, KernelSpec psi, KernelSpec theta,
                                   GridFunction weight, PowerPair rs) {
  return ProblemSpec(std::move(mesh), std::move(phi), std::move(psi), std::move(theta),
                     std::move(weight), rs);
}

ProblemSpec ProblemSpec::with_weight(GridFunction weight) const {
  return ProblemSpec(mesh_, phi_, psi_, theta_, std::move(weight), rs_);
}

double ProblemSpec::norm_p2(const GridFunction& u) const {
  const auto vals = u.at_quad();
  const auto grads = u.gradient_magnitude_at_quad();
  const auto& wts = mesh_->quad_weights();
  return luxemburg_norm(QuadSamples{vals, p2_, wts}) + luxemburg_norm(QuadSamples{grads, p2_, wts});
}

Assembly assemble(const GridFunction& u, const ProblemSpec& spec, unsigned parts) {
  const Mesh& m = spec.mesh();
  if (&u.mesh() != &m) throw DomainError("grid function is not on the problem mesh");
  const bool want_e = parts & kEnergyGradients;
  const bool want_2 = parts & kSecondQuotientGradients;
  const auto n = static_cast<Eigen::Index>(m.interior_count());

  Assembly out;
  if (want_e) {
    out.d_e1 = Eigen::VectorXd::Zero(n);
    out.d_e2 = Eigen::VectorXd::Zero(n);
  }
  if (want_2) {
    out.d_num2 = Eigen::VectorXd::Zero(n);
    out.d_den2 = Eigen::VectorXd::Zero(n);
  }

  const double r = spec.powers().r;
  const double s = spec.powers().s;
  const auto& pts = m.quad_points();
  const auto& wts = m.quad_weights();
  const auto& p1 = spec.p1_at_quad();
  const auto& p2 = spec.p2_at_quad();
  const auto& p3 = spec.p3_at_quad();
  const auto& wq = spec.weight_at_quad();
  const KernelSpec& phi = spec.phi();
  const KernelSpec& psi = spec.psi();
  const KernelSpec& theta = spec.theta();
  const std::size_t nq = m.quad_per_element();

  for (std::size_t e = 0; e < m.element_count(); ++e) {
    const Element& el = m.element(e);
    std::array<double, 3> ul{};
    std::array<int, 3> ia{-1, -1, -1};
    for (int a = 0; a < el.node_count; ++a) {
      const auto node = static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(a)]);
      ia[static_cast<std::size_t>(a)] = m.interior_index(node);
      ul[static_cast<std::size_t>(a)] = u.nodal(node);
    }
    const auto g = u.gradient(e);
    const double xi = std::hypot(g[0], g[1]);

    double phi_e = 0.0, psi_e = 0.0, theta_e = 0.0, e2_e = 0.0, num_e = 0.0, den_e = 0.0;
    double flux_coef = 0.0;   // sum_q W (phi + psi)
    double flux2_coef = 0.0;  // sum_q W (2 (phi + psi) + xi (phi' + psi'))
    std::array<double, 3> react_e{}, react_2{};

    for (std::size_t q = 0; q < nq; ++q) {
      const std::size_t f = e * nq + q;
      const Point& x = pts[f];
      const double W = wts[f];
      const auto& sh = m.quad_shape(f);
      const double uq = sh[0] * ul[0] + sh[1] * ul[1] + sh[2] * ul[2];
      const double au = std::abs(uq);
      const double sgn = uq > 0.0 ? 1.0 : (uq < 0.0 ? -1.0 : 0.0);

      phi_e += W * phi.density(x, p1[f], xi);
      psi_e += W * psi.density(x, p2[f], xi);
      theta_e += W * wq[f] * theta.density(x, p3[f], au);

      const double ur = au > 0.0 ? std::pow(au, r) : 0.0;
      const double us = au > 0.0 ? std::pow(au, s) : 0.0;
      e2_e += W * (ur / r + us / s);
      den_e += W * (ur + us);

      double k_sum = 0.0;
      if (xi > 0.0) k_sum = phi.value(x, p1[f], xi) + psi.value(x, p2[f], xi);
      const double k_theta = au > 0.0 ? theta.value(x, p3[f], au) : 0.0;
      num_e += W * (k_sum * xi * xi + wq[f] * k_theta * uq * uq);

      if (want_e) {
        flux_coef += W * k_sum;
        // theta(|u|) u + (|u|^{r-2} + |u|^{s-2}) u, the latter kept apart for E_2
        const double t_react = W * wq[f] * k_theta * uq;
        const double e2_react = au > 0.0 ? W * sgn * (ur + us) / au : 0.0;
        for (int a = 0; a < el.node_count; ++a) {
          react_e[static_cast<std::size_t>(a)] += t_react * sh[static_cast<std::size_t>(a)];
          react_2[static_cast<std::size_t>(a)] += e2_react * sh[static_cast<std::size_t>(a)];
        }
      }
      if (want_2) {
        if (xi > 0.0) {
          const double dk = phi.xi_derivative(x, p1[f], xi) + psi.xi_derivative(x, p2[f], xi);
          flux2_coef += W * (2.0 * k_sum + xi * dk);
        }
        double t2 = 0.0;
        if (au > 0.0) t2 = W * wq[f] * (2.0 * k_theta + au * theta.xi_derivative(x, p3[f], au)) * uq;
        const double d2 = au > 0.0 ? W * sgn * (r * ur + s * us) / au : 0.0;
        for (int a = 0; a < el.node_count; ++a) {
          const auto i = ia[static_cast<std::size_t>(a)];
          if (i < 0) continue;
          out.d_num2[i] += t2 * sh[static_cast<std::size_t>(a)];
          out.d_den2[i] += d2 * sh[static_cast<std::size_t>(a)];
        }
      }
    }

    const double sum = phi_e + psi_e + theta_e + e2_e + num_e + den_e + flux_coef + flux2_coef;
    if (!std::isfinite(sum))
      throw NonFiniteValue("energy contribution is not finite on element " + std::to_string(e),
                           static_cast<long>(e));

    out.energy.phi_value += phi_e;
    out.energy.psi_value += psi_e;
    out.energy.theta_value += theta_e;
    out.energy.e2_value += e2_e;
    out.num2 += num_e;
    out.den2 += den_e;

    for (int a = 0; a < el.node_count; ++a) {
      const auto i = ia[static_cast<std::size_t>(a)];
      if (i < 0) continue;
      const auto& ga = el.shape_gradient[static_cast<std::size_t>(a)];
      const double dot = g[0] * ga[0] + g[1] * ga[1];
      if (want_e) {
        out.d_e1[i] += flux_coef * dot + react_e[static_cast<std::size_t>(a)];
        out.d_e2[i] += react_2[static_cast<std::size_t>(a)];
      }
      if (want_2) out.d_num2[i] += flux2_coef * dot;
    }
  }
  return out;
}

EnergyBreakdown energies(const GridFunction& u, const ProblemSpec& spec) {
  return assemble(u, spec, kValues).energy;
}

double total_energy(const GridFunction& u, const ProblemSpec& spec, double lambda) {
  const auto e = energies(u, spec);
  return e.e1() - lambda * e.e2_value;
}

Eigen::VectorXd gateaux_gradient(const GridFunction& u, const ProblemSpec& spec, double lambda) {
  auto a = assemble(u, spec, kEnergyGradients);
  return a.d_e1 - lambda * a.d_e2;
}

WeakResidual weak_residual(const GridFunction& u, const ProblemSpec& spec, double lambda) {
  WeakResidual out;
  out.vector = gateaux_gradient(u, spec, lambda);
  const double max_r = out.vector.size() ? out.vector.cwiseAbs().maxCoeff() : 0.0;
  out.norm = max_r == 0.0 ? 0.0 : max_r / (1.0 + spec.norm_p2(u));
  return out;
}

void write_energy_csv(std::ostream& out, const EnergyBreakdown& e, double lambda) {
  out << "phi,psi,theta,e2,total,lambda\n";
  out << format_double(e.phi_value) << ',' << format_double(e.psi_value) << ','
      << format_double(e.theta_value) << ',' << format_double(e.e2_value) << ','
      << format_double(e.e1() - lambda * e.e2_value) << ',' << format_double(lambda) << '\n';
}

}  // namespace dphase
