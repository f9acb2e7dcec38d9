#pragma once

#include <span>
#include <vector>

#include "dphase/exponent_field.hpp"
#include "dphase/mesh.hpp"

namespace dphase {

/// A function known only through its values at the quadrature points of a
/// mesh, with the exponent sampled at the same points.
struct QuadSamples {
  std::span<const double> values;
  std::span<const double> exponent;
  std::span<const double> weights;
};

/// sum_q w_q |f_q|^{p_q}
double modular(const QuadSamples& f);
/// rho_{p(.)}(u) = int |u|^{p(x)} dx with the mesh quadrature.
double modular(const GridFunction& u, const ExponentField& p);

/// inf{lambda > 0 : rho(f / lambda) <= 1}; zero for the zero function.
/// Bracket by doubling/halving from 1, then bisection.
/// Throws ConvergenceError when no bracket exists after 200 doublings.
double luxemburg_norm(const QuadSamples& f);
double luxemburg_norm(const GridFunction& u, const ExponentField& p);
/// Luxemburg norm of |Du|.
double gradient_luxemburg_norm(const GridFunction& u, const ExponentField& p);
/// |u|_{L^p} + |Du|_{L^p}, the W^{1,p(.)} norm.
double sobolev_norm(const GridFunction& u, const ExponentField& p);

struct HolderPairing {
  double lhs;  // |int u v|
  double rhs;  // (1/p- + 1/p'-) |u|_{p(.)} |v|_{p'(.)}
};

/// Both sides of the variable-exponent Hölder inequality. p'- is taken as
/// conjugate(p+).
HolderPairing holder_pairing(const GridFunction& u, const GridFunction& v, const ExponentField& p);

}  // namespace dphase
