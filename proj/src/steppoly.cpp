#include "iqp/steppoly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "iqp/errors.hpp"
#include "iqp/json_io.hpp"

namespace iqp {

// ---------------------------------------------------------------- LinearFormQ

IntVec LinearFormQ::primitive() const {
  IntVec p = primitive_of(c_);
  for (const auto& x : p)
    if (x != 0) {
      if (x < 0)
        for (auto& y : p) y = -y;
      break;
    }
  return p;
}

Rat LinearFormQ::scale() const {
  IntVec p = primitive();
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) return c_[i] / Rat(p[i]);
  return 0;
}

// ---------------------------------------------------------------- atom table

namespace {

struct Atom {
  FactorKind kind;
  LinearFormQ form;
};

class AtomTable {
 public:
  AtomId intern(FactorKind kind, const RatVec& form) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(kind, form);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(Atom{kind, LinearFormQ(form)});
    index_.emplace(std::move(key), id);
    return id;
  }
  const Atom& get(AtomId id) {
    std::lock_guard<std::mutex> lock(mu_);
    return atoms_[id];
  }

 private:
  std::mutex mu_;
  std::deque<Atom> atoms_;
  std::map<std::pair<FactorKind, RatVec>, AtomId> index_;
};

AtomTable& atoms() {
  static AtomTable t;
  return t;
}

AtomId coord_atom(int N, int j) {
  RatVec e(N, Rat(0));
  e[j] = 1;
  return atoms().intern(FactorKind::Poly, e);
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

void accumulate(std::map<Monomial, Rat>& t, const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = t.lower_bound(m);
  if (it != t.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  } else {
    t.emplace_hint(it, m, c);
  }
}

bool factor_less(const Factor& a, const Factor& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (!(a.form == b.form)) return a.form < b.form;
  return a.exp < b.exp;
}

bool factors_less(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), factor_less);
}

}  // namespace

// ---------------------------------------------------------------- construction

void QuasiPolynomial::check_same(const QuasiPolynomial& o) const {
  if (N_ != o.N_) throw domain_error("DimensionMismatch", "quasi-polynomials over different N");
}

QP QuasiPolynomial::constant(int N, const Rat& c) {
  QP p(N);
  if (c != 0) p.t_.emplace(Monomial{}, c);
  return p;
}

QP QuasiPolynomial::variable(int N, int j) {
  QP p(N);
  p.t_.emplace(Monomial{{coord_atom(N, j), 1}}, Rat(1));
  return p;
}

QP QuasiPolynomial::linear(int N, const RatVec& eta) {
  if (static_cast<int>(eta.size()) != N) throw domain_error("DimensionMismatch", "form length");
  QP p(N);
  for (int j = 0; j < N; ++j)
    if (eta[j] != 0) p.t_.emplace(Monomial{{coord_atom(N, j), 1}}, eta[j]);
  return p;
}

QP QuasiPolynomial::step(int N, const RatVec& eta) {
  if (static_cast<int>(eta.size()) != N) throw domain_error("DimensionMismatch", "form length");
  QP p(N);
  if (iqp::is_zero(eta)) return p;  // {0} = 0
  p.t_.emplace(Monomial{{atoms().intern(FactorKind::Step, eta), 1}}, Rat(1));
  return p;
}

QP QuasiPolynomial::from_terms(int N, const std::vector<Term>& terms) {
  QP out(N);
  for (const auto& term : terms) {
    QP t = constant(N, term.coeff);
    for (const auto& f : term.step) {
      if (f.exp < 1) throw schema_error("step exponent must be >= 1");
      t = t * pow(step(N, f.form.coeffs()), f.exp);
    }
    for (const auto& f : term.poly) {
      if (f.exp < 1) throw schema_error("poly exponent must be >= 1");
      t = t * pow(linear(N, f.form.coeffs()), f.exp);
    }
    out += t;
  }
  return out;
}

Rat QuasiPolynomial::constant_term() const {
  auto it = t_.find(Monomial{});
  return it == t_.end() ? Rat(0) : it->second;
}

// ---------------------------------------------------------------- arithmetic

QP& QuasiPolynomial::operator+=(const QP& o) {
  check_same(o);
  for (const auto& [m, c] : o.t_) accumulate(t_, m, c);
  return *this;
}

QP& QuasiPolynomial::operator-=(const QP& o) {
  check_same(o);
  for (const auto& [m, c] : o.t_) accumulate(t_, m, -c);
  return *this;
}

void QuasiPolynomial::add_scaled(const QP& o, const Rat& c) {
  check_same(o);
  if (c == 0) return;
  for (const auto& [m, x] : o.t_) accumulate(t_, m, x * c);
}

QP& QuasiPolynomial::operator*=(const Rat& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, x] : t_) x *= c;
  return *this;
}

QP QuasiPolynomial::operator-() const {
  QP r = *this;
  for (auto& [m, x] : r.t_) x = -x;
  return r;
}

QP operator*(const QP& a, const QP& b) {
  a.check_same(b);
  QP r(a.N_);
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) accumulate(r.t_, mono_mul(ma, mb), ca * cb);
  return r;
}

QP pow(const QP& p, int n) {
  QP r = QP::constant(p.params(), 1);
  QP base = p;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

// ---------------------------------------------------------------- queries

Rat QuasiPolynomial::eval(const RatVec& b) const {
  if (static_cast<int>(b.size()) != N_) throw domain_error("DimensionMismatch", "point length");
  std::map<AtomId, Rat> cache;
  auto value = [&](AtomId id) -> const Rat& {
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    const Atom& a = atoms().get(id);
    Rat v = a.form.eval(b);
    if (a.kind == FactorKind::Step) v = frac(v);
    return cache.emplace(id, v).first->second;
  };
  Rat s = 0;
  for (const auto& [m, c] : t_) {
    Rat x = c;
    for (const auto& [id, e] : m) {
      const Rat& v = value(id);
      for (std::uint32_t k = 0; k < e; ++k) x *= v;
      if (x == 0) break;
    }
    s += x;
  }
  return s;
}

QPDegrees QuasiPolynomial::degrees() const {
  QPDegrees d;
  for (const auto& [m, c] : t_) {
    int ps = 0, ss = 0;
    for (const auto& [id, e] : m) {
      if (atoms().get(id).kind == FactorKind::Step)
        ss += static_cast<int>(e);
      else
        ps += static_cast<int>(e);
    }
    d.poly = std::max(d.poly, ps);
    d.step = std::max(d.step, ss);
    d.local = std::max(d.local, ps + ss);
  }
  return d;
}

QPDegrees qp_degrees(const QP& p) { return p.degrees(); }

QP QuasiPolynomial::poly_degree_part(int r) const {
  QP out(N_);
  for (const auto& [m, c] : t_) {
    int ps = 0;
    for (const auto& [id, e] : m)
      if (atoms().get(id).kind == FactorKind::Poly) ps += static_cast<int>(e);
    if (ps == r) out.t_.emplace(m, c);
  }
  return out;
}

QP QuasiPolynomial::specialize(const RatMatrix& T) const {
  if (T.rows != N_) throw domain_error("DimensionMismatch", "specialization matrix rows != N");
  int q = T.cols;
  std::map<AtomId, QP> image;
  auto image_of = [&](AtomId id) -> const QP& {
    auto it = image.find(id);
    if (it != image.end()) return it->second;
    const Atom& a = atoms().get(id);
    RatVec eta(q, Rat(0));
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < N_; ++i) eta[j] += a.form[i] * T(i, j);
    QP v = a.kind == FactorKind::Step ? QP::step(q, eta) : QP::linear(q, eta);
    return image.emplace(id, std::move(v)).first->second;
  };
  QP out(q);
  for (const auto& [m, c] : t_) {
    QP t = QP::constant(q, c);
    for (const auto& [id, e] : m) {
      t = t * pow(image_of(id), static_cast<int>(e));
      if (t.is_zero()) break;
    }
    out += t;
  }
  return out;
}

QP qp_specialize(const QP& p, const RatMatrix& T) { return p.specialize(T); }

std::vector<LinearFormQ> QuasiPolynomial::step_forms() const {
  std::set<AtomId> ids;
  for (const auto& [m, c] : t_)
    for (const auto& [id, e] : m)
      if (atoms().get(id).kind == FactorKind::Step) ids.insert(id);
  std::vector<LinearFormQ> out;
  for (AtomId id : ids) out.push_back(atoms().get(id).form);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QP::Term> QuasiPolynomial::terms() const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& [m, c] : t_) {
    Term t{c, {}, {}};
    for (const auto& [id, e] : m) {
      const Atom& a = atoms().get(id);
      (a.kind == FactorKind::Step ? t.step : t.poly)
          .push_back(Factor{a.kind, a.form, static_cast<int>(e)});
    }
    std::sort(t.step.begin(), t.step.end(), factor_less);
    std::sort(t.poly.begin(), t.poly.end(), factor_less);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    int da = 0, db = 0;
    for (const auto& f : a.poly) da += f.exp;
    for (const auto& f : b.poly) db += f.exp;
    if (da != db) return da > db;
    if (factors_less(a.poly, b.poly)) return true;
    if (factors_less(b.poly, a.poly)) return false;
    return factors_less(a.step, b.step);
  });
  return out;
}

// ---------------------------------------------------------------- printing

std::vector<std::string> default_names(int N, const std::string& stem) {
  std::vector<std::string> n;
  if (N == 1 && stem == "t") return {"t"};
  for (int i = 0; i < N; ++i) n.push_back(stem + std::to_string(i + 1));
  return n;
}

std::string linear_to_string(const RatVec& eta, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < eta.size(); ++j) {
    if (eta[j] == 0) continue;
    Rat c = eta[j];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rat a = abs(c);
    if (a != 1) os << a.get_str() << "*";
    os << names[j];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string QuasiPolynomial::to_string(const std::vector<std::string>& names0) const {
  auto names = names0.empty() ? default_names(N_) : names0;
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms()) {
    Rat c = term.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rat a = abs(c);
    std::vector<std::string> parts;
    for (const auto& f : term.step) {
      std::string s = "{" + linear_to_string(f.form.coeffs(), names) + "}";
      if (f.exp > 1) s += "^" + std::to_string(f.exp);
      parts.push_back(s);
    }
    for (const auto& f : term.poly) {
      std::string s = linear_to_string(f.form.coeffs(), names);
      if (f.exp > 1) s += "^" + std::to_string(f.exp);
      parts.push_back(s);
    }
    if (parts.empty() || a != 1) {
      os << a.get_str();
      if (!parts.empty()) os << "*";
    }
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- equivalence

bool qp_equivalent(const QP& p, const QP& q, int samples) {
  if (p.params() != q.params()) throw domain_error("DimensionMismatch", "quasi-polynomials over different N");
  if (p == q) return true;
  QP diff = p - q;
  int N = p.params();
  Int den = 1;
  for (const auto& f : diff.step_forms())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), lcm_denominators(f.coeffs()).get_mpz_t());
  std::mt19937_64 rng(0x5eed5eedULL + static_cast<unsigned>(N));
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  static const long primes[] = {101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157};
  samples = std::max(samples, 12);
  for (int s = 0; s < samples; ++s) {
    RatVec b(N);
    int mode = s % 4;
    for (int j = 0; j < N; ++j) {
      if (mode == 0) {
        b[j] = Rat(rnd(-9, 9));
      } else if (mode == 1 || mode == 2) {
        // grid refining the alcove pattern: hits walls and interiors
        Int g = den * (mode == 1 ? 1 : rnd(2, 4));
        b[j] = rat(Int(rnd(-40, 40)), g);
      } else {
        long pr = primes[rnd(0, 11)];
        while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(pr))) pr += 2;
        b[j] = rat(Int(rnd(-10 * pr, 10 * pr)), Int(pr));
      }
    }
    if (diff.eval(b) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- JSON

Json rat_to_json(const Rat& q) { return Json(q.get_str()); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  throw schema_error("expected a rational string \"p/q\"");
}

Json ratvec_to_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat_to_json(x));
  return a;
}

RatVec ratvec_from_json(const Json& j) {
  if (!j.is_array()) throw schema_error("expected an array of rationals");
  RatVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

Json qp_to_json(const QP& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json step = Json::array(), poly = Json::array();
    for (const auto& f : t.step) step.push_back(Json::array({ratvec_to_json(f.form.coeffs()), f.exp}));
    for (const auto& f : t.poly) poly.push_back(Json::array({ratvec_to_json(f.form.coeffs()), f.exp}));
    terms.push_back(Json{{"coeff", rat_to_json(t.coeff)}, {"step", step}, {"poly", poly}});
  }
  return Json{{"N", p.params()}, {"terms", terms}};
}

QP qp_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("terms") || !j["N"].is_number_integer() ||
      !j["terms"].is_array())
    throw schema_error("quasi-polynomial needs integer \"N\" and array \"terms\"");
  int N = j["N"].get<int>();
  if (N < 0) throw schema_error("negative N");
  std::vector<QP::Term> terms;
  auto factors = [&](const Json& arr, FactorKind kind) {
    std::vector<Factor> out;
    if (!arr.is_array()) throw schema_error("factor list must be an array");
    for (const auto& f : arr) {
      if (!f.is_array() || f.size() != 2 || !f[1].is_number_integer())
        throw schema_error("factor must be [[rationals], exponent]");
      RatVec form = ratvec_from_json(f[0]);
      if (static_cast<int>(form.size()) != N) throw schema_error("factor form length != N");
      out.push_back(Factor{kind, LinearFormQ(form), f[1].get<int>()});
    }
    return out;
  };
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff")) throw schema_error("term needs \"coeff\"");
    QP::Term term{rat_from_json(t["coeff"]),
                  factors(t.value("step", Json::array()), FactorKind::Step),
                  factors(t.value("poly", Json::array()), FactorKind::Poly)};
    terms.push_back(std::move(term));
  }
  return QP::from_terms(N, terms);
}

}  // namespace iqp
