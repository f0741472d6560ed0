#pragma once

#include <array>
#include <optional>
#include <vector>

#include "polytriple/int_types.hpp"
#include "polytriple/polynum.hpp"

namespace polytriple {

/// A finite prime or the real place of Q.
class Place {
 public:
  static Place real() { return Place(); }
  static Place finite(const Int& p);

  bool is_real() const { return real_; }
  const Int& prime() const;

 private:
  Place() = default;
  bool real_ = true;
  Int p_;
};

/// Non-singular diagonal ternary form over Q_p.
class PadicDiagForm {
 public:
  PadicDiagForm(const Place& place, const std::array<Int, 3>& entries);
  const Place& place() const { return place_; }
  const std::array<Int, 3>& entries() const { return entries_; }
  Int discriminant() const { return entries_[0] * entries_[1] * entries_[2]; }

 private:
  Place place_;
  std::array<Int, 3> entries_;
};

/// Reduced fraction; only the square class matters for symbols.
struct Rational {
  Rational(Int numerator, Int denominator);
  Rational(const Int& n) : Rational(n, 1) {}  // NOLINT: deliberate converting ctor
  Rational(long long n) : Rational(Int(n), 1) {}
  Int num;
  Int den;  // > 0
};

/// Largest e with p^e | n; nullopt (infinite) for n = 0.
std::optional<unsigned> padic_order(const Int& n, const Int& p);

/// Legendre symbol (u | p) for odd prime p.
int legendre_symbol(const Int& u, const Int& p);

/// Jacobi symbol (a | n) for odd n > 0 (not necessarily prime).
int jacobi_symbol(Int a, Int n);

/// Hilbert symbol (x, y)_v over the completion at v; x, y nonzero.
int hilbert_symbol(const Rational& x, const Rational& y, const Place& v);

/// Product over i < j of (d_i, d_j)_p.
int hasse_symbol(const PadicDiagForm& f);

/// Isotropy criterion: c_p(f) == (-1, -disc)_p.
bool is_isotropic_ternary(const PadicDiagForm& f);

/// Primes p | 2(a-2)(b-2)(c-2) at which <a-2, b-2, c-2> is anisotropic
/// (every other finite prime is isotropic). Ascending.
std::vector<Int> anisotropic_primes(const TripleInvariants& t);

struct DivisibilityProfile {
  unsigned max_order = 0;
  bool bounded = false;  // max over [0, nMax/2] already equals max over [0, nMax]
  Int attaining_n = 0;   // smallest n attaining max_order
};

/// Empirical max of ord_p(target(n)) over n <= n_max. Accepts any prime
/// (profiles at isotropic primes are informational). A zero target (only
/// possible at n = 0 with zero shift) is skipped.
DivisibilityProfile divisibility_profile(const TripleInvariants& t, const Int& p, u64 n_max);

/// Local representability of target(n) by the completed-square congruences
/// at p. When some order is not divisible by 4 this is always true; with
/// verify=true the mod-p^k search is run regardless and cross-checked.
bool local_coset_represents(const TripleInvariants& t, const Int& p, const Int& n,
                            bool verify = false);

struct ResidueObstruction {
  int modulus = 0;  // 8 or 16
  int attained = 0;
  std::vector<int> missing;  // residues never attained
};

/// Congruence obstruction for triples with a == b == c == 0 (mod 4):
/// modulus 8 when all agree mod 8, else modulus 16. nullopt otherwise.
std::optional<ResidueObstruction> residue_obstruction(const TripleInvariants& t);

}  // namespace polytriple
