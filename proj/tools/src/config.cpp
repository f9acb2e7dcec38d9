#include "dphase_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase::cli {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Drops a trailing `# comment` that is not inside quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& s, int line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) fail(line, "expected a number, got '" + s + "'");
  return v;
}

long to_integer(const std::string& s, int line) {
  long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) fail(line, "expected an integer, got '" + s + "'");
  return v;
}

// `"..."` -> contents.
std::string unquote(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"' ||
      std::count(s.begin(), s.end(), '"') != 2)
    fail(line, "expected a quoted expression, got '" + s + "'");
  return s.substr(1, s.size() - 2);
}

std::vector<std::string> split_numbers(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

FieldValue parse_field(const std::string& v, int line) {
  FieldValue f;
  if (v.rfind("expr", 0) == 0 && v.size() > 4 && std::isspace(static_cast<unsigned char>(v[4]))) {
    f.is_expression = true;
    f.expression = unquote(trim(v.substr(4)), line);
    try {
      const auto e = Expression::parse(f.expression);
      if (e.uses_xi() || e.uses_p()) fail(line, "field expressions may only use x and y");
    } catch (const ParseError& err) {
      fail(line, err.what());
    }
    return f;
  }
  if (v.rfind("const", 0) == 0 && v.size() > 5 && std::isspace(static_cast<unsigned char>(v[5]))) {
    f.constant = to_double(trim(v.substr(5)), line);
    return f;
  }
  f.constant = to_double(v, line);
  return f;
}

KernelValue parse_kernel(const std::string& v, int line) {
  KernelValue k;
  if (v.rfind("expr", 0) == 0 && v.size() > 4 && std::isspace(static_cast<unsigned char>(v[4]))) {
    k.expression = unquote(trim(v.substr(4)), line);
    try {
      (void)Expression::parse(k.expression);
    } catch (const ParseError& err) {
      fail(line, err.what());
    }
    return k;
  }
  if (v != "power" && v != "mean_curvature" && v != "capillarity")
    fail(line, "unknown kernel '" + v + "'");
  k.builtin = v;
  return k;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

template <class T>
Setter solver_number(T QuotientConfig::*field) {
  return [field](RunConfig& c, const std::string& v, int line) {
    if constexpr (std::is_floating_point_v<T>) {
      c.solver.*field = to_double(v, line);
    } else {
      const long n = to_integer(v, line);
      if (n < 0) fail(line, "expected a non-negative integer");
      c.solver.*field = static_cast<T>(n);
    }
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"problem.domain",
       [](RunConfig& c, const std::string& v, int line) {
         const auto parts = split_numbers(v);
         if (parts.size() != 2 && parts.size() != 4)
           fail(line, "domain takes 2 (interval) or 4 (rectangle) numbers");
         c.domain.clear();
         for (const auto& p : parts) c.domain.push_back(to_double(p, line));
       }},
      {"problem.mesh",
       [](RunConfig& c, const std::string& v, int line) {
         const auto parts = split_numbers(v);
         if (parts.empty() || parts.size() > 2) fail(line, "mesh takes n or n,m");
         c.mesh_x = static_cast<int>(to_integer(parts[0], line));
         c.mesh_y = parts.size() == 2 ? static_cast<int>(to_integer(parts[1], line)) : c.mesh_x;
       }},
      {"problem.phi", [](RunConfig& c, const std::string& v, int l) { c.phi = parse_kernel(v, l); }},
      {"problem.psi", [](RunConfig& c, const std::string& v, int l) { c.psi = parse_kernel(v, l); }},
      {"problem.theta",
       [](RunConfig& c, const std::string& v, int l) { c.theta = parse_kernel(v, l); }},
      {"problem.p1", [](RunConfig& c, const std::string& v, int l) { c.p1 = parse_field(v, l); }},
      {"problem.p2", [](RunConfig& c, const std::string& v, int l) { c.p2 = parse_field(v, l); }},
      {"problem.p3", [](RunConfig& c, const std::string& v, int l) { c.p3 = parse_field(v, l); }},
      {"problem.r", [](RunConfig& c, const std::string& v, int l) { c.r = to_double(v, l); }},
      {"problem.s", [](RunConfig& c, const std::string& v, int l) { c.s = to_double(v, l); }},
      {"problem.weight",
       [](RunConfig& c, const std::string& v, int l) { c.weight = parse_field(v, l); }},
      {"solver.initial_step", solver_number(&QuotientConfig::initial_step)},
      {"solver.armijo_factor", solver_number(&QuotientConfig::armijo_factor)},
      {"solver.sufficient_decrease", solver_number(&QuotientConfig::sufficient_decrease)},
      {"solver.max_iterations", solver_number(&QuotientConfig::max_iterations)},
      {"solver.restarts", solver_number(&QuotientConfig::restarts)},
      {"solver.seed", solver_number(&QuotientConfig::seed)},
      {"solver.relative_change_tol", solver_number(&QuotientConfig::relative_change_tol)},
      {"solver.stall_window", solver_number(&QuotientConfig::stall_window)},
      {"solver.residual_tol", solver_number(&QuotientConfig::residual_tol)},
      {"solver.converged_tol", solver_number(&QuotientConfig::converged_tol)},
      {"solver.nontriviality_floor", solver_number(&QuotientConfig::nontriviality_floor)},
      {"solver.lbfgs_memory", solver_number(&QuotientConfig::lbfgs_memory)},
      {"output.label",
       [](RunConfig& c, const std::string& v, int line) {
         if (v.empty() || v.find_first_of("/\\ \t\"") != std::string::npos)
           fail(line, "label must be a single path component");
         c.label = v;
       }},
  };
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Splits `lhs = rhs`; rhs keeps its quotes.
std::pair<std::string, std::string> split_assignment(const std::string& line, int n) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) fail(n, "expected 'key = value'");
  auto key = trim(std::string_view(line).substr(0, eq));
  auto value = trim(std::string_view(line).substr(eq + 1));
  if (key.empty()) fail(n, "missing key");
  if (value.empty()) fail(n, "missing value for '" + key + "'");
  return {key, value};
}

}  // namespace

std::string FieldValue::describe() const {
  return is_expression ? "expr \"" + expression + "\"" : "const " + format_double(constant);
}

std::string KernelValue::describe() const {
  return builtin.empty() ? "expr \"" + expression + "\"" : builtin;
}

std::vector<std::string> RunConfig::echo() const {
  std::map<std::string, std::string> kv;
  std::string dom;
  for (double d : domain) dom += (dom.empty() ? "" : " ") + format_double(d);
  kv["problem.domain"] = dom;
  kv["problem.mesh"] = domain.size() == 2 ? std::to_string(mesh_x)
                                           : std::to_string(mesh_x) + "," + std::to_string(mesh_y);
  kv["problem.phi"] = phi.describe();
  kv["problem.psi"] = psi.describe();
  kv["problem.theta"] = theta.describe();
  kv["problem.p1"] = p1.describe();
  kv["problem.p2"] = p2.describe();
  kv["problem.p3"] = p3.describe();
  kv["problem.r"] = format_double(r);
  kv["problem.s"] = format_double(s);
  kv["problem.weight"] = weight.describe();
  kv["solver.initial_step"] = format_double(solver.initial_step);
  kv["solver.armijo_factor"] = format_double(solver.armijo_factor);
  kv["solver.sufficient_decrease"] = format_double(solver.sufficient_decrease);
  kv["solver.max_iterations"] = std::to_string(solver.max_iterations);
  kv["solver.restarts"] = std::to_string(solver.restarts);
  kv["solver.seed"] = std::to_string(solver.seed);
  kv["solver.relative_change_tol"] = format_double(solver.relative_change_tol);
  kv["solver.stall_window"] = std::to_string(solver.stall_window);
  kv["solver.residual_tol"] = format_double(solver.residual_tol);
  kv["solver.converged_tol"] = format_double(solver.converged_tol);
  kv["solver.nontriviality_floor"] = format_double(solver.nontriviality_floor);
  kv["solver.lbfgs_memory"] = std::to_string(solver.lbfgs_memory);
  kv["output.label"] = label;
  std::vector<std::string> out;
  for (const auto& [k, v] : kv) out.push_back(k + " = " + v);
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  int n = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++n;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto [key, value] = split_assignment(line, n);
    const auto it = setters().find(key);
    if (it == setters().end()) fail(n, "unknown key '" + key + "'");
    if (!seen.insert(key).second) fail(n, "duplicate key '" + key + "'");
    it->second(cfg, value, n);
  }
  if (cfg.mesh_x == 0) cfg.mesh_x = cfg.mesh_y =
      cfg.domain.size() == 2 ? kDefaultElements1D : kDefaultElements2D;
  if (cfg.solver.restarts < 1) throw ParseError("solver.restarts must be at least 1");
  if (cfg.solver.lbfgs_memory < 1) throw ParseError("solver.lbfgs_memory must be at least 1");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

void apply_mesh_override(RunConfig& cfg, const std::string& spec) {
  const auto parts = split_numbers(spec);
  if (parts.empty() || parts.size() > 2) throw ParseError("--mesh takes n or n,m");
  try {
    cfg.mesh_x = static_cast<int>(to_integer(parts[0], 0));
    cfg.mesh_y = parts.size() == 2 ? static_cast<int>(to_integer(parts[1], 0)) : cfg.mesh_x;
  } catch (const ParseError&) {
    throw ParseError("--mesh: expected n or n,m, got '" + spec + "'");
  }
}

ExponentField make_field(const Domain& domain, const FieldValue& v) {
  if (!v.is_expression) return ExponentField::constant(domain, v.constant);
  return ExponentField::from_expression(domain, Expression::parse(v.expression));
}

GridFunction make_weight(const MeshPtr& mesh, const FieldValue& v) {
  if (!v.is_expression) {
    const double c = v.constant;
    return interpolate([c](const Point&) { return c; }, mesh);
  }
  const auto e = Expression::parse(v.expression);
  return interpolate([&e](const Point& x) { return e(x[0], x[1]); }, mesh);
}

namespace {

KernelSpec make_kernel(const KernelValue& k, const ExponentField& p) {
  if (!k.builtin.empty()) return make_builtin_kernel(k.builtin, p);
  return make_expression_kernel(p, Expression::parse(k.expression));
}

}  // namespace

ProblemSpec Problem::spec() const { return ProblemSpec::create(mesh, phi, psi, theta, weight, rs); }

Problem build_problem(const RunConfig& cfg) {
  const Domain domain = cfg.domain.size() == 2
                            ? Domain::interval(cfg.domain[0], cfg.domain[1])
                            : Domain::rectangle(cfg.domain[0], cfg.domain[1], cfg.domain[2],
                                                cfg.domain[3]);
  auto mesh = Mesh::uniform(domain, cfg.mesh_x, cfg.mesh_y);
  auto phi = make_kernel(cfg.phi, make_field(domain, cfg.p1));
  auto psi = make_kernel(cfg.psi, make_field(domain, cfg.p2));
  auto theta = make_kernel(cfg.theta, make_field(domain, cfg.p3));
  auto w = make_weight(mesh, cfg.weight);
  return Problem{domain, mesh, std::move(phi), std::move(psi), std::move(theta), std::move(w),
                 PowerPair{cfg.r, cfg.s}};
}

std::vector<std::pair<std::string, FieldValue>> parse_weight_file(const std::string& text) {
  std::vector<std::pair<std::string, FieldValue>> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  int n = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++n;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto [name, value] = split_assignment(line, n);
    if (!seen.insert(name).second) fail(n, "duplicate weight '" + name + "'");
    out.emplace_back(name, parse_field(value, n));
  }
  if (out.empty()) throw ParseError("weight file lists no weights");
  return out;
}

WeightFamily load_weight_family(const std::filesystem::path& path, const MeshPtr& mesh) {
  std::vector<NamedWeight> members;
  for (auto& [name, v] : parse_weight_file(read_file(path)))
    members.push_back({name, make_weight(mesh, v)});
  return WeightFamily(std::move(members));
}

}  // namespace dphase::cli
