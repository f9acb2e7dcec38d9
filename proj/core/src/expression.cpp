#include "dphase/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "dphase/errors.hpp"

namespace dphase {
namespace {

constexpr std::size_t kMaxStack = 64;

using Op = Expression::Op;
using Instr = Expression::Instr;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Instr> run() {
    parse_expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return std::move(out_);
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError("expression \"" + std::string(text_) + "\" at offset " +
                     std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  void emit(Op op, double v = 0.0) { out_.push_back({op, v}); }

  void parse_expr() {
    parse_term();
    for (;;) {
      if (accept('+')) {
        parse_term();
        emit(Op::add);
      } else if (accept('-')) {
        parse_term();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }

  void parse_term() {
    parse_unary();
    for (;;) {
      if (accept('*')) {
        parse_unary();
        emit(Op::mul);
      } else if (accept('/')) {
        parse_unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }

  void parse_unary() {
    if (accept('-')) {
      parse_unary();
      emit(Op::neg);
    } else if (accept('+')) {
      parse_unary();
    } else {
      parse_power();
    }
  }

  void parse_power() {
    parse_atom();
    if (accept('^')) {
      parse_unary();
      emit(Op::pow);
    }
  }

  void parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      parse_expr();
      expect(')');
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* first = text_.data() + pos_;
      const char* last = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc()) error("bad number");
      pos_ += static_cast<std::size_t>(ptr - first);
      emit(Op::push, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == "x") return emit(Op::var_x);
      if (id == "y") return emit(Op::var_y);
      if (id == "xi") return emit(Op::var_xi);
      if (id == "p") return emit(Op::var_p);
      if (id == "pi") return emit(Op::push, std::numbers::pi);
      if (id == "e") return emit(Op::push, std::numbers::e);
      static constexpr std::array<std::pair<std::string_view, Op>, 6> funcs{{
          {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp},
          {"abs", Op::abs}, {"sqrt", Op::sqrt}, {"log", Op::log},
      }};
      for (const auto& [name, op] : funcs) {
        if (id == name) {
          expect('(');
          parse_expr();
          expect(')');
          emit(op);
          return;
        }
      }
      pos_ = start;
      error("unknown identifier '" + std::string(id) + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Instr> out_;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.source_ = std::string(text);
  e.program_ = Parser(text).run();
  std::size_t depth = 0;
  for (const auto& ins : e.program_) {
    switch (ins.op) {
      case Op::push:
      case Op::var_x:
      case Op::var_y:
      case Op::var_xi:
      case Op::var_p:
        ++depth;
        break;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
      case Op::pow:
        --depth;
        break;
      default:
        break;
    }
    e.max_depth_ = std::max(e.max_depth_, depth);
    e.uses_xi_ = e.uses_xi_ || ins.op == Op::var_xi;
    e.uses_p_ = e.uses_p_ || ins.op == Op::var_p;
  }
  if (e.max_depth_ > kMaxStack) throw ParseError("expression too deeply nested: " + e.source_);
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.source_ = std::to_string(value);
  e.program_ = {{Op::push, value}};
  e.max_depth_ = 1;
  return e;
}

bool Expression::is_constant() const {
  for (const auto& ins : program_) {
    if (ins.op == Op::var_x || ins.op == Op::var_y || ins.op == Op::var_xi || ins.op == Op::var_p)
      return false;
  }
  return true;
}

double Expression::operator()(const ExpressionVars& v) const {
  std::array<double, kMaxStack> st;
  std::size_t n = 0;
  for (const auto& ins : program_) {
    switch (ins.op) {
      case Op::push: st[n++] = ins.value; break;
      case Op::var_x: st[n++] = v.x; break;
      case Op::var_y: st[n++] = v.y; break;
      case Op::var_xi: st[n++] = v.xi; break;
      case Op::var_p: st[n++] = v.p; break;
      case Op::add: --n; st[n - 1] += st[n]; break;
      case Op::sub: --n; st[n - 1] -= st[n]; break;
      case Op::mul: --n; st[n - 1] *= st[n]; break;
      case Op::div: --n; st[n - 1] /= st[n]; break;
      case Op::pow: --n; st[n - 1] = std::pow(st[n - 1], st[n]); break;
      case Op::neg: st[n - 1] = -st[n - 1]; break;
      case Op::sin: st[n - 1] = std::sin(st[n - 1]); break;
      case Op::cos: st[n - 1] = std::cos(st[n - 1]); break;
      case Op::exp: st[n - 1] = std::exp(st[n - 1]); break;
      case Op::abs: st[n - 1] = std::abs(st[n - 1]); break;
      case Op::sqrt: st[n - 1] = std::sqrt(st[n - 1]); break;
      case Op::log: st[n - 1] = std::log(st[n - 1]); break;
    }
  }
  return st[0];
}

}  // namespace dphase
