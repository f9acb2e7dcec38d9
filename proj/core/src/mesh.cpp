#include "dphase/mesh.hpp"

#include <cmath>
#include <ostream>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase {

Mesh::Mesh(Domain domain, int nx, int ny, QuadratureRule rule)
    : domain_(domain), nx_(nx), ny_(ny), rule_(std::move(rule)) {}

std::shared_ptr<const Mesh> Mesh::interval(const Domain& domain, int elements, QuadratureRule rule) {
  if (domain.dimension() != 1) throw DomainError("interval mesh needs a 1D domain");
  if (elements < 2) throw DomainError("a mesh needs at least 2 elements per axis");
  std::shared_ptr<Mesh> m(new Mesh(domain, elements, 0, std::move(rule)));
  const auto& ax = domain.axis(0);
  const double h = ax.length() / elements;
  for (int i = 0; i <= elements; ++i) {
    m->nodes_.push_back({i == elements ? ax.b : ax.a + i * h, 0.0});
    const bool boundary = i == 0 || i == elements;
    m->interior_index_.push_back(boundary ? -1 : static_cast<int>(m->interior_nodes_.size()));
    if (!boundary) m->interior_nodes_.push_back(i);
  }
  for (int i = 0; i < elements; ++i) {
    Element e;
    e.nodes = {i, i + 1, -1};
    e.node_count = 2;
    e.measure = h;
    e.shape_gradient[0] = {-1.0 / h, 0.0};
    e.shape_gradient[1] = {1.0 / h, 0.0};
    m->elements_.push_back(e);
  }
  m->build_quadrature();
  return m;
}

std::shared_ptr<const Mesh> Mesh::rectangle(const Domain& domain, int nx, int ny,
                                            QuadratureRule rule) {
  if (domain.dimension() != 2) throw DomainError("rectangle mesh needs a 2D domain");
  if (nx < 2 || ny < 2) throw DomainError("a mesh needs at least 2 elements per axis");
  std::shared_ptr<Mesh> m(new Mesh(domain, nx, ny, std::move(rule)));
  const auto& ax = domain.axis(0);
  const auto& ay = domain.axis(1);
  const double hx = ax.length() / nx;
  const double hy = ay.length() / ny;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      m->nodes_.push_back({i == nx ? ax.b : ax.a + i * hx, j == ny ? ay.b : ay.a + j * hy});
      const bool boundary = i == 0 || j == 0 || i == nx || j == ny;
      const int id = j * (nx + 1) + i;
      m->interior_index_.push_back(boundary ? -1 : static_cast<int>(m->interior_nodes_.size()));
      if (!boundary) m->interior_nodes_.push_back(id);
    }
  }
  auto make_triangle = [&m](int a, int b, int c) {
    Element e;
    e.nodes = {a, b, c};
    e.node_count = 3;
    const Point& p0 = m->nodes_[static_cast<std::size_t>(a)];
    const Point& p1 = m->nodes_[static_cast<std::size_t>(b)];
    const Point& p2 = m->nodes_[static_cast<std::size_t>(c)];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    e.measure = 0.5 * std::abs(det);
    const std::array<const Point*, 3> v{&p0, &p1, &p2};
    for (int k = 0; k < 3; ++k) {
      const Point& pj = *v[static_cast<std::size_t>((k + 1) % 3)];
      const Point& pk = *v[static_cast<std::size_t>((k + 2) % 3)];
      e.shape_gradient[static_cast<std::size_t>(k)] = {(pj[1] - pk[1]) / det, (pk[0] - pj[0]) / det};
    }
    m->elements_.push_back(e);
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int n00 = j * (nx + 1) + i;
      const int n10 = n00 + 1;
      const int n01 = n00 + nx + 1;
      const int n11 = n01 + 1;
      make_triangle(n00, n10, n11);
      make_triangle(n00, n11, n01);
    }
  }
  m->build_quadrature();
  return m;
}

std::shared_ptr<const Mesh> Mesh::uniform(const Domain& domain, int nx, int ny) {
  return domain.dimension() == 1 ? interval(domain, nx) : rectangle(domain, nx, ny);
}

void Mesh::build_quadrature() {
  const std::size_t nq = rule_.size();
  quad_points_.reserve(elements_.size() * nq);
  for (const auto& e : elements_) {
    for (std::size_t q = 0; q < nq; ++q) {
      const auto& ref = rule_.points[q];
      std::array<double, 3> shape{};
      if (e.node_count == 2) {
        shape = {1.0 - ref[0], ref[0], 0.0};
      } else {
        shape = {1.0 - ref[0] - ref[1], ref[0], ref[1]};
      }
      Point x{0.0, 0.0};
      for (int a = 0; a < e.node_count; ++a) {
        const Point& pa = nodes_[static_cast<std::size_t>(e.nodes[static_cast<std::size_t>(a)])];
        x[0] += shape[static_cast<std::size_t>(a)] * pa[0];
        x[1] += shape[static_cast<std::size_t>(a)] * pa[1];
      }
      quad_points_.push_back(x);
      quad_weights_.push_back(rule_.weights[q] * e.measure);
      quad_shape_.push_back(shape);
    }
  }
}

std::vector<Mesh::Triplet> Mesh::stiffness_triplets() const {
  std::vector<Triplet> out;
  for (const auto& e : elements_) {
    for (int a = 0; a < e.node_count; ++a) {
      const int ia = interior_index_[static_cast<std::size_t>(e.nodes[static_cast<std::size_t>(a)])];
      if (ia < 0) continue;
      for (int b = 0; b < e.node_count; ++b) {
        const int ib = interior_index_[static_cast<std::size_t>(e.nodes[static_cast<std::size_t>(b)])];
        if (ib < 0) continue;
        const auto& ga = e.shape_gradient[static_cast<std::size_t>(a)];
        const auto& gb = e.shape_gradient[static_cast<std::size_t>(b)];
        out.push_back({ia, ib, e.measure * (ga[0] * gb[0] + ga[1] * gb[1])});
      }
    }
  }
  return out;
}

GridFunction::GridFunction(MeshPtr mesh)
    : mesh_(std::move(mesh)), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh_->interior_count()))) {}

GridFunction::GridFunction(MeshPtr mesh, Eigen::VectorXd values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != mesh_->interior_count())
    throw DomainError("grid function size does not match the interior node count");
  if (!values_.allFinite()) throw NonFiniteValue("grid function has non-finite nodal values");
}

double GridFunction::nodal(std::size_t node) const {
  const int idx = mesh_->interior_index(node);
  return idx < 0 ? 0.0 : values_[idx];
}

std::vector<double> GridFunction::at_quad() const {
  const Mesh& m = *mesh_;
  const std::size_t nq = m.quad_per_element();
  std::vector<double> out(m.quad_count());
  for (std::size_t e = 0; e < m.element_count(); ++e) {
    const Element& el = m.element(e);
    std::array<double, 3> local{};
    for (int a = 0; a < el.node_count; ++a)
      local[static_cast<std::size_t>(a)] = nodal(static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(a)]));
    for (std::size_t q = 0; q < nq; ++q) {
      const auto& sh = m.quad_shape(e * nq + q);
      out[e * nq + q] = sh[0] * local[0] + sh[1] * local[1] + sh[2] * local[2];
    }
  }
  return out;
}

std::array<double, 2> GridFunction::gradient(std::size_t e) const {
  const Element& el = mesh_->element(e);
  std::array<double, 2> g{0.0, 0.0};
  for (int a = 0; a < el.node_count; ++a) {
    const double ua = nodal(static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(a)]));
    g[0] += ua * el.shape_gradient[static_cast<std::size_t>(a)][0];
    g[1] += ua * el.shape_gradient[static_cast<std::size_t>(a)][1];
  }
  return g;
}

std::vector<double> GridFunction::gradient_magnitude_at_quad() const {
  const std::size_t nq = mesh_->quad_per_element();
  std::vector<double> out(mesh_->quad_count());
  for (std::size_t e = 0; e < mesh_->element_count(); ++e) {
    const auto g = gradient(e);
    const double mag = std::hypot(g[0], g[1]);
    for (std::size_t q = 0; q < nq; ++q) out[e * nq + q] = mag;
  }
  return out;
}

GridFunction GridFunction::operator*(double t) const { return GridFunction(mesh_, values_ * t); }

GridFunction GridFunction::operator+(const GridFunction& other) const {
  if (other.mesh_ != mesh_) throw DomainError("grid functions live on different meshes");
  return GridFunction(mesh_, values_ + other.values_);
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  if (other.mesh_ != mesh_) throw DomainError("grid functions live on different meshes");
  return GridFunction(mesh_, values_ - other.values_);
}

GridFunction interpolate(const std::function<double(const Point&)>& f, const MeshPtr& mesh) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(mesh->interior_count()));
  const auto& interior = mesh->interior_nodes();
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const Point& x = mesh->node(static_cast<std::size_t>(interior[k]));
    const double fx = f(x);
    if (!std::isfinite(fx))
      throw NonFiniteValue("interpolated function is not finite at (" + format_double(x[0]) +
                           ", " + format_double(x[1]) + ")");
    v[static_cast<Eigen::Index>(k)] = fx;
  }
  return GridFunction(mesh, std::move(v));
}

std::vector<std::array<double, 2>> gradient_at_quad(const GridFunction& u, std::size_t element) {
  return std::vector<std::array<double, 2>>(u.mesh().quad_per_element(), u.gradient(element));
}

double integrate(const std::function<double(const QuadContext&)>& density, const Mesh& mesh) {
  const std::size_t nq = mesh.quad_per_element();
  const auto& pts = mesh.quad_points();
  const auto& wts = mesh.quad_weights();
  double sum = 0.0;
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    for (std::size_t q = 0; q < nq; ++q) {
      const std::size_t flat = e * nq + q;
      const double d = density(QuadContext{pts[flat], e, flat});
      if (!std::isfinite(d))
        throw NonFiniteValue("integrand is not finite on element " + std::to_string(e),
                             static_cast<long>(e));
      sum += wts[flat] * d;
    }
  }
  return sum;
}

void write_csv(std::ostream& out, const GridFunction& u) {
  const Mesh& m = u.mesh();
  const bool two_d = m.dimension() == 2;
  out << (two_d ? "x,y,value\n" : "x,value\n");
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const Point& x = m.node(i);
    out << format_double(x[0]) << ',';
    if (two_d) out << format_double(x[1]) << ',';
    out << format_double(u.nodal(i)) << '\n';
  }
}

}  // namespace dphase
