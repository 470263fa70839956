#include "iqp/rational.hpp"

#include <cctype>
#include <mutex>

#include "iqp/errors.hpp"

namespace iqp {

Rat rat(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

Rat rat(const Int& n, const Int& d) {
  if (d == 0) throw domain_error("ZeroDivision", "zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

Int floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat frac(const Rat& q) { return q - Rat(floor(q)); }

int sgn(const Rat& q) { return ::sgn(q); }
int sgn(const Int& z) { return ::sgn(z); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

std::string to_string(const Rat& q) { return q.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

Rat parse_rat(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw schema_error("empty rational");
  auto valid_int = [](std::string_view x) {
    size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    if (i >= x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  auto as_int = [](std::string_view x) {
    std::string y(x);
    if (!y.empty() && y[0] == '+') y.erase(0, 1);
    return Int(y);
  };
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string_view n(t.data(), slash), d(t.data() + slash + 1, t.size() - slash - 1);
    if (!valid_int(n) || !valid_int(d)) throw schema_error("bad rational '" + t + "'");
    Int den = as_int(d);
    if (den == 0) throw schema_error("zero denominator in '" + t + "'");
    return rat(as_int(n), den);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.erase(0, 1);
    if (ip.empty()) ip = "0";
    if (fp.empty() || !valid_int(ip) || !valid_int(fp) || fp[0] == '-' || fp[0] == '+')
      throw schema_error("bad decimal '" + t + "'");
    Int scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rat q = rat(Int(ip) * scale + Int(fp), scale);
    return neg ? Rat(-q) : q;
  }
  if (!valid_int(t)) throw schema_error("bad rational '" + t + "'");
  return Rat(as_int(t));
}

Int lcm_denominators(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

Int gcd_entries(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVec to_int(const RatVec& v) {
  IntVec r;
  r.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integer(x)) throw internal_error("NotIntegral", "expected integral vector");
    r.push_back(x.get_num());
  }
  return r;
}

RatVec to_rat(const IntVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

IntVec primitive_of(const RatVec& v) {
  Int l = lcm_denominators(v);
  IntVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(Int(x * l));
  Int g = gcd_entries(r);
  if (g == 0) throw domain_error("ZeroVector", "zero vector has no primitive multiple");
  for (auto& x : r) x /= g;
  return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Int factorial(long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Rat bernoulli_number(int n) {
  static std::mutex mu;
  static std::vector<Rat> table{Rat(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    Rat s = 0;
    for (int k = 0; k < m; ++k) s += Rat(binomial(m + 1, k)) * table[k];
    table.push_back(-s / Rat(m + 1));
  }
  return table[n];
}

std::string to_decimal(const Rat& q, int digits) {
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rat a = abs(q) * scale + Rat(1, 2);
  Int n = floor(a);
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  if (q < 0 && n != 0) out.insert(0, "-");
  return out;
}

}  // namespace iqp
