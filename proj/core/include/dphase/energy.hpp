#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dphase/exponent_field.hpp"
#include "dphase/kernels.hpp"
#include "dphase/mesh.hpp"

namespace dphase {

/// A fully specified problem instance: mesh, the three kernels (with their
/// exponents p1, p2, p3), the weight w and the reaction powers r <= s.
///
/// Exponents and the weight are sampled at the quadrature points once, at
/// construction.
class ProblemSpec {
 public:
  /// Validates ordering, subcriticality, r >= 2 and a finite weight;
  /// throws DomainError listing every failed condition.
  static ProblemSpec create(MeshPtr mesh, KernelSpec phi, KernelSpec psi, KernelSpec theta,
                            GridFunction weight, PowerPair rs);
  /// Same, without the structural checks (for tests of degenerate cases).
  static ProblemSpec unchecked(MeshPtr mesh, KernelSpec phi, KernelSpec psi, KernelSpec theta,
                               GridFunction weight, PowerPair rs);

  /// Copy with a different weight.
  ProblemSpec with_weight(GridFunction weight) const;

  const Mesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }
  const KernelSpec& phi() const { return phi_; }
  const KernelSpec& psi() const { return psi_; }
  const KernelSpec& theta() const { return theta_; }
  const GridFunction& weight() const { return weight_; }
  const PowerPair& powers() const { return rs_; }
  double weight_bound() const { return weight_.max_abs(); }

  // Quadrature-point samples.
  const std::vector<double>& p1_at_quad() const { return p1_; }
  const std::vector<double>& p2_at_quad() const { return p2_; }
  const std::vector<double>& p3_at_quad() const { return p3_; }
  const std::vector<double>& weight_at_quad() const { return w_; }

  /// ||u||_{W^{1,p2(.)}} = |u|_{p2} + |Du|_{p2}.
  double norm_p2(const GridFunction& u) const;

 private:
  ProblemSpec(MeshPtr mesh, KernelSpec phi, KernelSpec psi, KernelSpec theta, GridFunction weight,
              PowerPair rs);

  MeshPtr mesh_;
  KernelSpec phi_;
  KernelSpec psi_;
  KernelSpec theta_;
  GridFunction weight_;
  PowerPair rs_;
  std::vector<double> p1_, p2_, p3_, w_;
};

/// Validation of everything ProblemSpec::create checks, as a report.
ValidationReport validate_problem(const KernelSpec& phi, const KernelSpec& psi,
                                  const KernelSpec& theta, const GridFunction& weight,
                                  const PowerPair& rs);

struct EnergyBreakdown {
  double phi_value = 0.0;    // int Phi_0(x, |Du|)
  double psi_value = 0.0;    // int Psi_0(x, |Du|)
  double theta_value = 0.0;  // int w Theta_0(x, |u|)
  double e2_value = 0.0;     // int |u|^r / r + |u|^s / s

  double e1() const { return phi_value + psi_value + theta_value; }
};

/// Everything assembled in one sweep over the elements.
///
/// num2 = int (phi + psi)(|Du|) |Du|^2 + int w theta(|u|) u^2
/// den2 = int |u|^r + |u|^s
struct Assembly {
  EnergyBreakdown energy;
  double num2 = 0.0;
  double den2 = 0.0;
  // Derivatives with respect to the interior nodal values; empty unless asked.
  Eigen::VectorXd d_e1;
  Eigen::VectorXd d_e2;
  Eigen::VectorXd d_num2;
  Eigen::VectorXd d_den2;
};

enum AssemblyParts : unsigned {
  kValues = 0,
  kEnergyGradients = 1u << 0,
  kSecondQuotientGradients = 1u << 1,
};

/// Throws NonFiniteValue naming the element on any non-finite contribution.
Assembly assemble(const GridFunction& u, const ProblemSpec& spec, unsigned parts = kValues);

EnergyBreakdown energies(const GridFunction& u, const ProblemSpec& spec);

/// Phi + Psi + Theta - lambda E_2.
double total_energy(const GridFunction& u, const ProblemSpec& spec, double lambda);

/// Derivative of total_energy along each interior basis function.
Eigen::VectorXd gateaux_gradient(const GridFunction& u, const ProblemSpec& spec, double lambda);

struct WeakResidual {
  double norm;  // max |R_i| / (1 + ||u||_{p2})
  Eigen::VectorXd vector;
};

/// R_i = int (phi + psi)(|Du|) Du.Dphi_i + int w theta(|u|) u phi_i
///       - lambda int (|u|^{r-2} + |u|^{s-2}) u phi_i
/// Same assembly path as gateaux_gradient.
WeakResidual weak_residual(const GridFunction& u, const ProblemSpec& spec, double lambda);

/// Writes `phi,psi,theta,e2,total,lambda` header and one row.
void write_energy_csv(std::ostream& out, const EnergyBreakdown& e, double lambda);

}  // namespace dphase
