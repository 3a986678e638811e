#include "cfield/expr.hpp"

#include <cctype>

namespace cfield {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const ExprContext& ctx) : s_(text), ctx_(ctx) {}

  FieldPoly run() {
    FieldPoly v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool starts_primary() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           c == '(';
  }

  FieldPoly constant(const FieldElement& e) const { return FieldPoly::constant(e); }

  FieldPoly expr() {
    FieldPoly v = term();
    for (;;) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }

  FieldPoly term() {
    FieldPoly v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        FieldPoly d = unary();
        if (d.is_zero()) throw DivisionByZero();
        if (d.degree() > 0) fail("division by a non-constant polynomial");
        v = v * d.coeff(0).inverse();
      } else if (starts_primary()) {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  FieldPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  FieldPoly power() {
    FieldPoly base = primary();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    unsigned long e = std::stoul(s_.substr(start, pos_ - start));
    if (e > 4096) fail("exponent too large");
    FieldPoly r = constant(ctx_.field->one());
    for (unsigned long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  FieldPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldPoly v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      BigInt n(s_.substr(start, pos_ - start));
      return constant(ctx_.field->from_rational(BigRational(n)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "sqrt" && peek('(')) {
        if (!ctx_.sqrt) fail("sqrt is not available here");
        ++pos_;
        FieldPoly arg = expr();
        if (!accept(')')) fail("expected ')'");
        if (arg.degree() > 0) fail("sqrt of a non-constant polynomial");
        FieldElement a = arg.is_zero() ? ctx_.field->zero() : arg.coeff(0);
        return constant(ctx_.sqrt(a));
      }
      if (!ctx_.variable.empty() && name == ctx_.variable) return FieldPoly::x(ctx_.field);
      if (ctx_.lookup)
        if (auto v = ctx_.lookup(name)) {
          if (v->owner() != ctx_.field) fail("generator '" + name + "' belongs to another field");
          return constant(*v);
        }
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const ExprContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldPoly parse_field_poly(const std::string& text, const ExprContext& ctx) {
  if (!ctx.field) throw ParseError("no field given");
  return Parser(text, ctx).run();
}

FieldElement parse_element(const std::string& text, const ExprContext& ctx) {
  ExprContext c = ctx;
  c.variable.clear();
  FieldPoly p = parse_field_poly(text, c);
  return p.is_zero() ? ctx.field->zero() : p.coeff(0);
}

UniPoly parse_rational_poly(const std::string& text, const std::string& var) {
  ExprContext ctx;
  ctx.field = NumberField::rationals();
  ctx.variable = var;
  return parse_field_poly(text, ctx).to_rational();
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    std::size_t a = cur.find_first_not_of(" \t\n");
    std::size_t b = cur.find_last_not_of(" \t\n");
    out.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0)
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

}  // namespace cfield
