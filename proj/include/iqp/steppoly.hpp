#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "iqp/matrix.hpp"

namespace iqp {

// A rational linear form b ↦ ⟨η,b⟩ on Q^N.  Stored as η itself, which is already a
// unique key; primitive() and scale() give the normalized view η = scale·primitive.
class LinearFormQ {
 public:
  LinearFormQ() = default;
  explicit LinearFormQ(RatVec c) : c_(std::move(c)) {}
  int size() const { return static_cast<int>(c_.size()); }
  const RatVec& coeffs() const { return c_; }
  const Rat& operator[](int i) const { return c_[i]; }
  bool is_zero() const { return iqp::is_zero(c_); }
  IntVec primitive() const;  // content 1, positive leading nonzero entry
  Rat scale() const;
  Rat eval(const RatVec& b) const { return dot(c_, b); }
  bool operator==(const LinearFormQ& o) const { return c_ == o.c_; }
  bool operator<(const LinearFormQ& o) const { return c_ < o.c_; }

 private:
  RatVec c_;
};

enum class FactorKind : std::uint8_t { Step = 0, Poly = 1 };

struct Factor {
  FactorKind kind;
  LinearFormQ form;
  int exp;
};

struct QPDegrees {
  int poly = 0, step = 0, local = 0;
};

using AtomId = std::uint32_t;
using Monomial = std::vector<std::pair<AtomId, std::uint32_t>>;  // sorted by atom id

class QuasiPolynomial {
 public:
  struct Term {
    Rat coeff;
    std::vector<Factor> step, poly;
  };

  explicit QuasiPolynomial(int N = 0) : N_(N) {}
  static QuasiPolynomial constant(int N, const Rat& c);
  static QuasiPolynomial variable(int N, int j);
  static QuasiPolynomial linear(int N, const RatVec& eta);
  static QuasiPolynomial step(int N, const RatVec& eta);
  static QuasiPolynomial from_terms(int N, const std::vector<Term>& terms);

  int params() const { return N_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  Rat constant_term() const;

  QuasiPolynomial& operator+=(const QuasiPolynomial& o);
  QuasiPolynomial& operator-=(const QuasiPolynomial& o);
  QuasiPolynomial& operator*=(const Rat& c);
  QuasiPolynomial operator-() const;
  friend QuasiPolynomial operator+(QuasiPolynomial a, const QuasiPolynomial& b) { return a += b; }
  friend QuasiPolynomial operator-(QuasiPolynomial a, const QuasiPolynomial& b) { return a -= b; }
  friend QuasiPolynomial operator*(const QuasiPolynomial& a, const QuasiPolynomial& b);
  friend QuasiPolynomial operator*(QuasiPolynomial a, const Rat& c) { return a *= c; }
  friend QuasiPolynomial operator*(const Rat& c, QuasiPolynomial a) { return a *= c; }
  // this += c·o
  void add_scaled(const QuasiPolynomial& o, const Rat& c);

  bool operator==(const QuasiPolynomial& o) const { return N_ == o.N_ && t_ == o.t_; }
  bool operator!=(const QuasiPolynomial& o) const { return !(*this == o); }

  Rat eval(const RatVec& b) const;
  QPDegrees degrees() const;
  QuasiPolynomial poly_degree_part(int r) const;
  // b = T t, T is N × q
  QuasiPolynomial specialize(const RatMatrix& T) const;
  std::vector<LinearFormQ> step_forms() const;
  // canonical sorted order
  std::vector<Term> terms() const;
  std::string to_string(const std::vector<std::string>& names = {}) const;

  const std::map<Monomial, Rat>& raw() const { return t_; }

 private:
  void check_same(const QuasiPolynomial& o) const;
  int N_;
  std::map<Monomial, Rat> t_;
};

using QP = QuasiPolynomial;

QP pow(const QP& p, int n);
QPDegrees qp_degrees(const QP& p);
QP qp_specialize(const QP& p, const RatMatrix& T);
// Structural comparison first, then exact evaluation of p−q at deterministic sample points
// (integer points, alcove-refining grids, generic rationals).
bool qp_equivalent(const QP& p, const QP& q, int samples = 500);

// Parses expressions such as "1/2*t^2 + (3/2 - {-t} - {2t})t" over the given variable names.
QP parse_qp(const std::string& text, const std::vector<std::string>& names);

std::string linear_to_string(const RatVec& eta, const std::vector<std::string>& names);
std::vector<std::string> default_names(int N, const std::string& stem = "b");

}  // namespace iqp
