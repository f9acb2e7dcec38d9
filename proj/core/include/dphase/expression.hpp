#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dphase {

/// Variables an expression may reference.
struct ExpressionVars {
  double x = 0.0;
  double y = 0.0;
  double xi = 0.0;
  double p = 0.0;
};

/// Small arithmetic language used by configs for exponents, weights and user
/// kernels.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('-' | '+') unary | power
///   power  := atom ('^' unary)?            right associative
///   atom   := number | 'x' | 'y' | 'xi' | 'p' | 'pi' | 'e'
///           | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | exp | abs | sqrt | log
///
/// Parsing compiles to a postfix program; evaluation is allocation free.
class Expression {
 public:
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  double operator()(const ExpressionVars& vars) const;
  double operator()(double x, double y = 0.0) const { return (*this)({x, y, 0.0, 0.0}); }

  const std::string& source() const { return source_; }
  bool uses_xi() const { return uses_xi_; }
  bool uses_p() const { return uses_p_; }
  bool is_constant() const;

  enum class Op : unsigned char {
    push, var_x, var_y, var_xi, var_p, add, sub, mul, div, pow, neg,
    sin, cos, exp, abs, sqrt, log
  };
  struct Instr {
    Op op;
    double value;
  };

 private:
  Expression() = default;

  std::string source_;
  std::vector<Instr> program_;
  std::size_t max_depth_ = 0;
  bool uses_xi_ = false;
  bool uses_p_ = false;
};

}  // namespace dphase
