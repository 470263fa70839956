#include <cctype>

#include "iqp/errors.hpp"
#include "iqp/steppoly.hpp"

namespace iqp {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& names)
      : s_(s), names_(names), N_(static_cast<int>(names.size())) {}

  QP run() {
    QP e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw schema_error("parse_qp: " + msg + " at offset " + std::to_string(i_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }

  bool starts_factor() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == '{' ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  QP expr() {
    QP acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  QP term() {
    QP acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        QP d = unary();
        if (d.is_zero() || d.size() != 1 || d.raw().begin()->first.size() != 0)
          fail("division by a non-constant or zero");
        acc *= 1 / d.constant_term();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  QP unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  QP power() {
    QP base = primary();
    if (eat('^')) {
      skip();
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected an integer exponent");
      return pow(base, std::stoi(s_.substr(st, i_ - st)));
    }
    return base;
  }

  QP primary() {
    char c = peek();
    if (c == '(') {
      ++i_;
      QP e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '{') {
      ++i_;
      QP e = expr();
      if (!eat('}')) fail("expected '}'");
      return bracket(e);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t st = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
      return QP::constant(N_, parse_rat(s_.substr(st, i_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      // longest declared name that prefixes the input, so "b1b2" reads as b1*b2
      int best = -1;
      size_t len = 0;
      for (int j = 0; j < N_; ++j) {
        const auto& n = names_[j];
        if (n.size() > len && s_.compare(i_, n.size(), n) == 0) {
          best = j;
          len = n.size();
        }
      }
      if (best < 0) fail("unknown variable");
      i_ += len;
      return QP::variable(N_, best);
    }
    fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end of input");
  }

  QP bracket(const QP& e) {
    RatVec eta(N_, Rat(0));
    Rat c0 = 0;
    for (const auto& t : e.terms()) {
      if (!t.step.empty() || t.poly.size() > 1 || (t.poly.size() == 1 && t.poly[0].exp != 1))
        fail("{...} needs a linear argument");
      if (t.poly.empty()) {
        c0 += t.coeff;
        continue;
      }
      for (int j = 0; j < N_; ++j) eta[j] += t.coeff * t.poly[0].form[j];
    }
    if (!is_integer(c0)) fail("non-integer constant inside {...}");
    return QP::step(N_, eta);
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  int N_;
  size_t i_ = 0;
};

}  // namespace

QP parse_qp(const std::string& text, const std::vector<std::string>& names) {
  return Parser(text, names).run();
}

}  // namespace iqp
