#include "polytriple/int_types.hpp"

#include <cmath>
#include <limits>

namespace polytriple {

i64 isqrt_i64(i64 x) {
  if (x < 0) throw DomainError("isqrt_i64: negative argument");
  if (x == 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

Int isqrt(const Int& x) {
  if (x < 0) throw DomainError("isqrt: negative argument");
  return boost::multiprecision::sqrt(x);
}

bool is_perfect_square(const Int& x, Int* root) {
  if (x < 0) return false;
  Int r = boost::multiprecision::sqrt(x);
  if (r * r != x) return false;
  if (root) *root = r;
  return true;
}

bool is_perfect_square_i64(i64 x, i64* root) {
  if (x < 0) return false;
  i64 r = isqrt_i64(x);
  if (r * r != x) return false;
  if (root) *root = r;
  return true;
}

bool fits_i64(const Int& x) {
  return x >= std::numeric_limits<i64>::min() && x <= std::numeric_limits<i64>::max();
}

i64 checked_i64(const Int& x) {
  if (!fits_i64(x)) throw ResourceError("value exceeds 64-bit range: " + x.str());
  return static_cast<i64>(x);
}

unsigned ord2(const Int& x) {
  if (x == 0) throw DomainError("ord2: zero argument");
  return static_cast<unsigned>(boost::multiprecision::lsb(x < 0 ? Int(-x) : x));
}

Int int_pow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

}  // namespace polytriple
