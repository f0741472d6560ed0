#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytriple/int_types.hpp"
#include "polytriple/polynum.hpp"

namespace polytriple {

/// Certificate that target(n) = t * r^2 for a squarefree divisor t of the level.
struct ExceptionalWitness {
  Int t;
  Int r;
};

/// All squarefree divisors of N >= 1, ascending.
std::vector<Int> squarefree_divisors(const Int& N);

/// Witness r with target(n) = tDiv * r^2, if any. tDiv must be a squarefree
/// divisor of the level.
std::optional<ExceptionalWitness> exceptional_membership(const TripleInvariants& t,
                                                         const Int& tDiv, const Int& n);

/// Witnesses over every squarefree divisor of the level; empty means n is
/// outside the exceptional set.
std::vector<ExceptionalWitness> exceptional_union(const TripleInvariants& t, const Int& n);

enum class Mod3Exclusion { Always, OnClass, Never };

/// Structural square-class exclusions read off the invariants:
///  - odd_primes_clean: pairwise gcds of (a-2, b-2, c-2) are powers of two and
///    no odd prime of the level divides the shift, so odd square classes
///    never occur among targets.
///  - mod3: targets are == 2 (mod 3) for every n (Always), exactly on the
///    class n == class_residue (mod 3) (OnClass), or neither (Never).
///  - ord2_excludes_2r2: ord_2(target) is constant and even, so no target is
///    twice a square.
struct SquareClassExclusion {
  bool odd_primes_clean = false;
  Mod3Exclusion mod3 = Mod3Exclusion::Never;
  std::optional<int> class_residue;
  bool ord2_excludes_2r2 = false;
  std::optional<unsigned> constant_ord2;
  std::string details;
};

SquareClassExclusion square_class_exclusion(const TripleInvariants& t);

/// Squarefree divisors of the level not ruled out by the structural
/// exclusions (the residual square classes that could interfere).
std::vector<Int> surviving_square_classes(const TripleInvariants& t,
                                          const SquareClassExclusion& ex);

}  // namespace polytriple
