#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "dphase/domain.hpp"
#include "dphase/quadrature.hpp"

namespace dphase {

inline constexpr int kDefaultElements1D = 256;
inline constexpr int kDefaultElements2D = 64;

/// Linear element: a segment in 1D or a triangle in 2D. Shape function
/// gradients are constant on the element.
struct Element {
  std::array<int, 3> nodes{-1, -1, -1};
  int node_count = 0;
  double measure = 0.0;
  std::array<std::array<double, 2>, 3> shape_gradient{};
};

/// Uniform mesh with homogeneous Dirichlet boundary: unknowns live on interior
/// nodes only. Rectangles are split along the lower-left to upper-right
/// diagonal.
class Mesh {
 public:
  static std::shared_ptr<const Mesh> interval(const Domain& domain, int elements,
                                              QuadratureRule rule = QuadratureRule::segment_gauss(4));
  static std::shared_ptr<const Mesh> rectangle(const Domain& domain, int nx, int ny,
                                               QuadratureRule rule = QuadratureRule::triangle_degree2());
  /// Dispatches on the domain kind; `ny` is ignored in 1D.
  static std::shared_ptr<const Mesh> uniform(const Domain& domain, int nx, int ny);

  const Domain& domain() const { return domain_; }
  int dimension() const { return domain_.dimension(); }
  std::array<int, 2> divisions() const { return {nx_, ny_}; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t interior_count() const { return interior_nodes_.size(); }
  std::size_t element_count() const { return elements_.size(); }

  const Point& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<Point>& nodes() const { return nodes_; }
  /// -1 for boundary nodes.
  int interior_index(std::size_t node) const { return interior_index_[node]; }
  const std::vector<int>& interior_nodes() const { return interior_nodes_; }
  const Element& element(std::size_t e) const { return elements_[e]; }

  const QuadratureRule& rule() const { return rule_; }
  std::size_t quad_per_element() const { return rule_.size(); }
  std::size_t quad_count() const { return quad_points_.size(); }

  // Flat quadrature data; point q of element e sits at e * quad_per_element() + q.
  const std::vector<Point>& quad_points() const { return quad_points_; }
  const std::vector<double>& quad_weights() const { return quad_weights_; }
  /// Values of the element's local shape functions at quadrature point `flat`.
  const std::array<double, 3>& quad_shape(std::size_t flat) const { return quad_shape_[flat]; }

  /// Laplace stiffness matrix on interior nodes as (row, col, value) triplets.
  struct Triplet {
    int row;
    int col;
    double value;
  };
  std::vector<Triplet> stiffness_triplets() const;

 private:
  Mesh(Domain domain, int nx, int ny, QuadratureRule rule);
  void build_quadrature();

  Domain domain_;
  int nx_;
  int ny_;
  QuadratureRule rule_;
  std::vector<Point> nodes_;
  std::vector<int> interior_index_;
  std::vector<int> interior_nodes_;
  std::vector<Element> elements_;
  std::vector<Point> quad_points_;
  std::vector<double> quad_weights_;
  std::vector<std::array<double, 3>> quad_shape_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Continuous piecewise-linear function with zero boundary trace, stored as
/// its interior nodal values.
class GridFunction {
 public:
  explicit GridFunction(MeshPtr mesh);
  GridFunction(MeshPtr mesh, Eigen::VectorXd values);

  const Mesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  /// Value at mesh node `node`; zero on the boundary.
  double nodal(std::size_t node) const;
  bool is_zero() const { return values_.isZero(0.0); }
  double max_abs() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

  /// Values at every quadrature point (flat order).
  std::vector<double> at_quad() const;
  /// Gradient on element e (constant).
  std::array<double, 2> gradient(std::size_t e) const;
  /// |Du| replicated at every quadrature point (flat order).
  std::vector<double> gradient_magnitude_at_quad() const;

  GridFunction operator*(double t) const;
  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;

 private:
  MeshPtr mesh_;
  Eigen::VectorXd values_;
};

/// Nodal interpolation; boundary nodes are forced to zero.
/// Throws NonFiniteValue if f is not finite at an interior node.
GridFunction interpolate(const std::function<double(const Point&)>& f, const MeshPtr& mesh);

/// Gradient of u at each quadrature point of `element`.
std::vector<std::array<double, 2>> gradient_at_quad(const GridFunction& u, std::size_t element);

/// What a density sees at a quadrature point.
struct QuadContext {
  const Point& x;
  std::size_t element;
  std::size_t flat;
};

/// Sum over elements and quadrature points of weight * density, in element
/// order. Throws NonFiniteValue naming the element of the first non-finite term.
double integrate(const std::function<double(const QuadContext&)>& density, const Mesh& mesh);

/// Writes `x[,y],value` with one row per node, boundary rows included.
void write_csv(std::ostream& out, const GridFunction& u);

}  // namespace dphase
