#pragma once

#include <array>

#include "polytriple/int_types.hpp"
#include "polytriple/polynum.hpp"

namespace polytriple::oracle {

/// Whether d1 x^2 + d2 y^2 + d3 z^2 == 0 (mod p^k) has a solution with at
/// least one coordinate a p-adic unit. Pure congruence search (organized via
/// value-set sums); no symbol formulas involved. Requires k to exceed the
/// p-valuation of each entry. Results are memoized; deterministic.
bool has_primitive_zero_mod(const std::array<Int, 3>& diag, const Int& p, unsigned k);

/// Search precision for the isotropy decision: max entry valuation + 3 for
/// odd p, + 5 at p = 2 (clears the unit-square lifting thresholds).
unsigned search_exponent(const std::array<Int, 3>& diag, const Int& p);

/// Isotropy of the diagonal ternary form over Q_p, decided purely by the
/// primitive-zero search at the pinned precision.
bool isotropic_by_search(const std::array<Int, 3>& diag, const Int& p);

/// Hilbert symbol by search: z^2 = x w^2 + y t^2 has a nontrivial p-adic
/// solution iff <1, -x, -y> has a primitive zero mod p^k.
int hilbert_by_search(const Int& x, const Int& y, const Int& p);

/// Whether target(n) is represented by the completed-square congruence
/// system modulo p^k (axis cosets respected). Existence only.
bool coset_represents_mod(const TripleInvariants& t, const Int& p, unsigned k, const Int& n);

}  // namespace polytriple::oracle
