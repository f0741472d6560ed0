#include "polytriple/localfield.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "polytriple/factor.hpp"
#include "polytriple/oracles.hpp"

namespace polytriple {

namespace {

unsigned ord_p(Int n, const Int& p) {
  if (n == 0) throw DomainError("ord_p: zero argument");
  if (n < 0) n = -n;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

int mod8_of_odd(const Int& u) { return static_cast<int>(mod_floor(u, Int(8))); }

// (u-1)/2 mod 2 for odd u
int eps2(const Int& u) {
  int m = static_cast<int>(mod_floor(u, Int(4)));
  return m == 3 ? 1 : 0;
}

// (u^2-1)/8 mod 2 for odd u
int omega2(const Int& u) {
  int m = mod8_of_odd(u);
  return (m == 3 || m == 5) ? 1 : 0;
}

int hilbert_int(const Int& x, const Int& y, const Place& v) {
  if (x == 0 || y == 0) throw DomainError("hilbert symbol arguments must be nonzero");
  if (v.is_real()) return (x < 0 && y < 0) ? -1 : 1;
  const Int& p = v.prime();
  unsigned alpha = ord_p(x, p), beta = ord_p(y, p);
  Int u = x / int_pow(p, alpha), w = y / int_pow(p, beta);
  if (p == 2) {
    int e = eps2(u) * eps2(w) + static_cast<int>(alpha & 1u) * omega2(w) +
            static_cast<int>(beta & 1u) * omega2(u);
    return (e & 1) ? -1 : 1;
  }
  int sign = 1;
  if ((alpha & 1u) && (beta & 1u) && mod_floor(p, Int(4)) == 3) sign = -sign;
  if (beta & 1u) sign *= legendre_symbol(u, p);
  if (alpha & 1u) sign *= legendre_symbol(w, p);
  return sign;
}

}  // namespace

Place Place::finite(const Int& p) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError("not a prime place: " + p.str());
  Place v;
  v.real_ = false;
  v.p_ = p;
  return v;
}

const Int& Place::prime() const {
  if (real_) throw DomainError("real place has no prime");
  return p_;
}

PadicDiagForm::PadicDiagForm(const Place& place, const std::array<Int, 3>& entries)
    : place_(place), entries_(entries) {
  if (place_.is_real()) throw DomainError("diagonal form requires a finite place");
  for (const Int& d : entries_)
    if (d == 0) throw DomainError("diagonal form must be non-singular");
}

Rational::Rational(Int numerator, Int denominator) : num(std::move(numerator)), den(std::move(denominator)) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = boost::multiprecision::gcd(num < 0 ? Int(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::optional<unsigned> padic_order(const Int& n, const Int& p) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError("padic_order: p must be prime");
  if (n == 0) return std::nullopt;
  return ord_p(n, p);
}

int jacobi_symbol(Int a, Int n) {
  if (n <= 0 || n % 2 == 0) throw DomainError("jacobi symbol needs odd positive modulus");
  a = mod_floor(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int m = static_cast<int>(mod_floor(n, Int(8)));
      if (m == 3 || m == 5) result = -result;
    }
    std::swap(a, n);
    if (mod_floor(a, Int(4)) == 3 && mod_floor(n, Int(4)) == 3) result = -result;
    a = mod_floor(a, n);
  }
  return n == 1 ? result : 0;
}

int legendre_symbol(const Int& u, const Int& p) {
  if (p == 2) throw DomainError("legendre symbol undefined at 2; use the 2-adic classes");
  if (p < 3 || !is_probable_prime(p)) throw DomainError("legendre symbol needs an odd prime");
  return jacobi_symbol(u, p);
}

int hilbert_symbol(const Rational& x, const Rational& y, const Place& v) {
  if (x.num == 0 || y.num == 0) throw DomainError("hilbert symbol arguments must be nonzero");
  // (n/d, .) = (n d, .): multiply by the square d^2
  return hilbert_int(x.num * x.den, y.num * y.den, v);
}

int hasse_symbol(const PadicDiagForm& f) {
  const auto& d = f.entries();
  return hilbert_int(d[0], d[1], f.place()) * hilbert_int(d[0], d[2], f.place()) *
         hilbert_int(d[1], d[2], f.place());
}

bool is_isotropic_ternary(const PadicDiagForm& f) {
  return hasse_symbol(f) == hilbert_int(Int(-1), Int(-f.discriminant()), f.place());
}

std::vector<Int> anisotropic_primes(const TripleInvariants& t) {
  const auto& o = t.original();
  std::array<Int, 3> form{o[0] - 2, o[1] - 2, o[2] - 2};
  std::set<Int> candidates{Int(2)};
  for (const Int& f : form)
    for (const Int& p : odd_prime_divisors(f)) candidates.insert(p);
  std::vector<Int> out;
  for (const Int& p : candidates)
    if (!is_isotropic_ternary(PadicDiagForm(Place::finite(p), form))) out.push_back(p);
  return out;
}

DivisibilityProfile divisibility_profile(const TripleInvariants& t, const Int& p, u64 n_max) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError("divisibility profile needs a prime");
  DivisibilityProfile prof;
  unsigned max_half = 0;
  bool have = false;
  for (u64 n = 0; n <= n_max; ++n) {
    Int tgt = t.target(Int(n));
    if (tgt == 0) continue;
    unsigned e = ord_p(tgt, p);
    if (!have || e > prof.max_order) {
      prof.max_order = e;
      prof.attaining_n = n;
      have = true;
    }
    if (n <= n_max / 2) max_half = std::max(max_half, e);
  }
  prof.bounded = have && (max_half == prof.max_order);
  return prof;
}

bool local_coset_represents(const TripleInvariants& t, const Int& p, const Int& n, bool verify) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError("local representability needs a prime");
  const auto& o = t.original();
  bool shortcut = (mod_floor(o[0], Int(4)) != 0) || (mod_floor(o[1], Int(4)) != 0) ||
                  (mod_floor(o[2], Int(4)) != 0);
  if (shortcut && !verify) return true;
  Int tgt = t.target(n);
  unsigned e = (tgt == 0) ? 0 : ord_p(tgt, p);
  unsigned k = e + (p == 2 ? 5u : 3u);
  bool found = oracle::coset_represents_mod(t, p, k, n);
  if (shortcut && !found)
    throw std::logic_error("local search contradicts the mod-4 representability criterion");
  return shortcut || found;
}

std::optional<ResidueObstruction> residue_obstruction(const TripleInvariants& t) {
  const auto& o = t.original();
  for (const Int& v : o)
    if (mod_floor(v, Int(4)) != 0) return std::nullopt;
  std::array<int, 3> r8{};
  for (size_t i = 0; i < 3; ++i) r8[i] = static_cast<int>(mod_floor(o[i], Int(8)));
  int modulus = (r8[0] == r8[1] && r8[1] == r8[2]) ? 8 : 16;
  i64 period = 2 * modulus;
  // per-axis value tables mod the modulus (period 2*modulus in x and in m)
  std::array<std::vector<i64>, 3> tab;
  for (size_t i = 0; i < 3; ++i) {
    i64 m = static_cast<i64>(mod_floor(o[i], Int(2 * period)));
    tab[i].resize(static_cast<size_t>(period));
    for (i64 x = 0; x < period; ++x) {
      i64 num = (m - 2) * x * x - (m - 4) * x;
      tab[i][static_cast<size_t>(x)] = mod_floor(num / 2, i64(modulus));
    }
  }
  std::vector<char> attained(static_cast<size_t>(modulus), 0);
  for (i64 x = 0; x < period; ++x)
    for (i64 y = 0; y < period; ++y) {
      i64 partial = tab[0][static_cast<size_t>(x)] + tab[1][static_cast<size_t>(y)];
      for (i64 z = 0; z < period; ++z)
        attained[static_cast<size_t>((partial + tab[2][static_cast<size_t>(z)]) % modulus)] = 1;
    }
  ResidueObstruction obs;
  obs.modulus = modulus;
  for (int rix = 0; rix < modulus; ++rix) {
    if (attained[static_cast<size_t>(rix)])
      ++obs.attained;
    else
      obs.missing.push_back(rix);
  }
  if (obs.missing.empty()) return std::nullopt;  // not expected for all-divisible-by-4 triples
  return obs;
}

}  // namespace polytriple
