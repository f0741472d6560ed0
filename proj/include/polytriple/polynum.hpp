#pragma once

#include <array>
#include <optional>

#include "polytriple/int_types.hpp"

namespace polytriple {

/// Order m >= 3 of the generalized polygonal sequence P_m(x) = ((m-2)x^2 - (m-4)x)/2.
class PolygonalOrder {
 public:
  explicit PolygonalOrder(Int m);
  const Int& value() const { return m_; }

 private:
  Int m_;
};

/// P_m(x) for any integer x (negative allowed), exact.
Int eval_polygonal(const PolygonalOrder& m, const Int& x);

/// Some x with P_m(x) == k, or nullopt. Exact discriminant test.
std::optional<Int> polygonal_witness(const PolygonalOrder& m, const Int& k);

/// Congruence on the completed-square variable along one axis:
/// the substituted variable ranges over { residue + modulus * Z }.
struct AxisCoset {
  Int modulus;
  Int residue;  // normalized into [0, modulus)
};

/// Derived data of a sum P_a + P_b + P_c:
///   delta   = 2 when a, b, c are all even, else 0
///   lCoeff  = 2^(3-delta) (a-2)(b-2)(c-2)          (coefficient of n)
///   shift   = 2^(-delta) [ (a-4)^2(b-2)(c-2) + (a-2)(b-4)^2(c-2) + (a-2)(b-2)(c-4)^2 ]
///   level   = 2^((2-delta)/2) (a-2)(b-2)(c-2)
/// All scalars are symmetric in (a,b,c); the user order is preserved for
/// reporting and cosets, a sorted copy is kept for canonical identity.
class TripleInvariants {
 public:
  TripleInvariants(const Int& a, const Int& b, const Int& c);

  const std::array<Int, 3>& original() const { return orig_; }
  const std::array<Int, 3>& canonical() const { return canon_; }
  int delta() const { return delta_; }
  const Int& l_coefficient() const { return lcoeff_; }
  const Int& shift() const { return shift_; }
  const Int& level() const { return level_; }
  const std::array<AxisCoset, 3>& cosets() const { return cosets_; }

  /// lCoeff * n + shift, exact. n >= 0.
  Int target(const Int& n) const;

  /// Original order as i64 when all three fit.
  std::optional<std::array<i64, 3>> as_small() const;

 private:
  std::array<Int, 3> orig_;
  std::array<Int, 3> canon_;
  int delta_;
  Int lcoeff_;
  Int shift_;
  Int level_;
  std::array<AxisCoset, 3> cosets_;
};

TripleInvariants triple_invariants(const Int& a, const Int& b, const Int& c);

Int target_number(const TripleInvariants& t, const Int& n);

/// Exact number of (x,y,z) in Z^3 with P_a(x)+P_b(y)+P_c(z) = n.
/// Enumeration region derived from n alone.
u64 direct_representation_count(const TripleInvariants& t, const Int& n);

/// Count of the completed-square form
///   (b-2)(c-2) u^2 + (a-2)(c-2) w^2 + (a-2)(b-2) s^2 = target(n)
/// over the axis cosets. Equals direct_representation_count for every n.
u64 coset_representation_count(const TripleInvariants& t, const Int& n);

}  // namespace polytriple
