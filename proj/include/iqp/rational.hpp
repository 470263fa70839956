#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace iqp {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

Rat rat(long n, long d = 1);
Rat rat(const Int& n, const Int& d);

// floor(q) and the fractional part {q} = q - floor(q), in [0,1)
Int floor(const Rat& q);
Int ceil(const Rat& q);
Rat frac(const Rat& q);

int sgn(const Rat& q);
int sgn(const Int& z);
bool is_integer(const Rat& q);

// "p/q", or "p" when the denominator is 1
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

// Accepts "p", "p/q" and plain decimals "1.25". Throws SchemaError otherwise.
Rat parse_rat(std::string_view s);

Int lcm_denominators(const RatVec& v);
Int gcd_entries(const IntVec& v);

IntVec to_int(const RatVec& v);      // requires integral entries
RatVec to_rat(const IntVec& v);
// v scaled by a positive rational to a primitive integer vector
IntVec primitive_of(const RatVec& v);

Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const IntVec& a, const RatVec& b);
bool is_zero(const RatVec& v);

Int binomial(long n, long k);
Int factorial(long n);
Rat bernoulli_number(int n);  // B_1 = -1/2

// decimal rendering rounded half away from zero
std::string to_decimal(const Rat& q, int digits);

}  // namespace iqp
