#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polytriple {

// Exact integer type for targets, witnesses and invariants. Sieve internals
// use i64 fast paths when values provably fit.
using Int = boost::multiprecision::cpp_int;
using i64 = std::int64_t;
using u64 = std::uint64_t;

// Precondition violations (order < 3, composite place, bad divisor, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requests exceeding the configured memory/precision budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floor square root, x >= 0.
i64 isqrt_i64(i64 x);
Int isqrt(const Int& x);

bool is_perfect_square(const Int& x, Int* root = nullptr);
bool is_perfect_square_i64(i64 x, i64* root = nullptr);

bool fits_i64(const Int& x);
i64 checked_i64(const Int& x);

/// 2-adic order of x != 0.
unsigned ord2(const Int& x);

Int int_pow(Int base, unsigned e);

/// Floor / ceil division (C++ `/` truncates toward zero).
template <class T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

template <class T>
T ceil_div(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

/// Nonnegative remainder in [0, |b|).
template <class T>
T mod_floor(const T& a, const T& b) {
  T r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

}  // namespace polytriple
