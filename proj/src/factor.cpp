#include "polytriple/factor.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <random>

namespace polytriple {

namespace {

constexpr i64 kTrialLimit = 1'000'000;

bool small_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int pollard_rho(const Int& n) {
  // Brent's cycle variant with deterministic restarts.
  for (Int c = 1; ; ++c) {
    Int x = 2, y = 2, d = 1;
    Int saved = x;
    u64 power = 1, lam = 0;
    auto step = [&](Int v) { return (v * v + c) % n; };
    y = step(x);
    while (d == 1) {
      if (lam == power) {
        saved = y;
        power *= 2;
        lam = 0;
      }
      y = step(y);
      ++lam;
      Int diff = y > saved ? y - saved : saved - y;
      if (diff == 0) break;  // cycle without factor; retry with next c
      d = boost::multiprecision::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(Int n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  if (fits_i64(n) && static_cast<i64>(n) < kTrialLimit) return small_prime(static_cast<i64>(n));
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);  // fixed seed: deterministic verdicts
  return boost::multiprecision::miller_rabin_test(n, 40, gen);
}

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
  if (n < 1) throw DomainError("factorize: argument must be >= 1");
  std::map<Int, unsigned> acc;
  for (i64 d : {i64(2), i64(3), i64(5)}) {
    while (n % d == 0) {
      ++acc[d];
      n /= d;
    }
  }
  // 30-wheel over the remaining trial range
  static constexpr int wheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
  bool exhausted = false;
  for (i64 base = 0; base < kTrialLimit && n > 1 && !exhausted; base += 30) {
    for (int off : wheel) {
      i64 d = base + off;
      if (d < 7) continue;
      if (Int(d) * d > n) {
        exhausted = true;
        break;
      }
      while (n % d == 0) {
        ++acc[d];
        n /= d;
      }
    }
  }
  if (exhausted && n > 1) {
    ++acc[n];  // no divisor up to sqrt(n)
    n = 1;
  }
  if (n > 1) {
    if (Int(kTrialLimit) * kTrialLimit > n) {
      ++acc[n];  // survived trial division below its square root
    } else {
      factor_rec(n, acc);
    }
  }
  return {acc.begin(), acc.end()};
}

Int odd_part(Int n) {
  if (n == 0) throw DomainError("odd_part: zero argument");
  return n >> ord2(n);
}

std::vector<Int> odd_prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factorize(n < 0 ? Int(-n) : n))
    if (p != 2) out.push_back(p);
  return out;
}

}  // namespace polytriple
