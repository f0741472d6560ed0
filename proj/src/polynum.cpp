#include "polytriple/polynum.hpp"

#include <algorithm>
#include <stdexcept>

namespace polytriple {

namespace {

template <class T>
T poly_eval(const T& m, const T& x) {
  return ((m - 2) * x * x - (m - 4) * x) / 2;
}

bool square_root_exact(i64 v, i64& out) { return is_perfect_square_i64(v, &out); }
bool square_root_exact(const Int& v, Int& out) { return is_perfect_square(v, &out); }

i64 sqrt_floor(i64 v) { return isqrt_i64(v); }
Int sqrt_floor(const Int& v) { return isqrt(v); }

/// Integer z-count of P_c(z) = value via the quadratic formula.
template <class T>
int preimage_count(const T& c, const T& value) {
  if (value < 0) return 0;
  T disc = (c - 4) * (c - 4) + 8 * (c - 2) * value;
  if (disc < 0) return 0;
  T s;
  if (!square_root_exact(disc, s)) return 0;
  T den = 2 * (c - 2);
  int cnt = 0;
  if ((c - 4 + s) % den == 0) ++cnt;
  if (s != 0 && (c - 4 - s) % den == 0) ++cnt;
  return cnt;
}

template <class T>
u64 direct_count_impl(const T& a, const T& b, const T& c, const T& n) {
  u64 total = 0;
  auto inner_y = [&](const T& rem1) {
    auto solve_z = [&](const T& vy) {
      T rem2 = rem1 - vy;
      total += static_cast<u64>(preimage_count(c, rem2));
    };
    for (T y = 0;; ++y) {
      T vy = poly_eval(b, y);
      if (vy > rem1) break;
      solve_z(vy);
    }
    for (T y = -1;; --y) {
      T vy = poly_eval(b, y);
      if (vy > rem1) break;
      solve_z(vy);
    }
  };
  for (T x = 0;; ++x) {
    T vx = poly_eval(a, x);
    if (vx > n) break;
    inner_y(n - vx);
  }
  for (T x = -1;; --x) {
    T vx = poly_eval(a, x);
    if (vx > n) break;
    inner_y(n - vx);
  }
  return total;
}

template <class T>
struct CosetAxisT {
  T coeff;     // quadratic coefficient on this axis
  T modulus;   // congruence modulus of the substituted variable
  T residue;   // residue in [0, modulus)
};

template <class T>
u64 coset_count_impl(const std::array<CosetAxisT<T>, 3>& ax, const T& target) {
  if (target < 0) return 0;
  u64 total = 0;
  const auto& [a1, a2, a3] = ax;
  T umax = sqrt_floor(T(target / a1.coeff));
  for (T j = ceil_div(T(-umax - a1.residue), a1.modulus),
         jhi = floor_div(T(umax - a1.residue), a1.modulus);
       j <= jhi; ++j) {
    T u = a1.residue + j * a1.modulus;
    T rem1 = target - a1.coeff * u * u;
    if (rem1 < 0) continue;
    T wmax = sqrt_floor(T(rem1 / a2.coeff));
    for (T i = ceil_div(T(-wmax - a2.residue), a2.modulus),
           ihi = floor_div(T(wmax - a2.residue), a2.modulus);
         i <= ihi; ++i) {
      T w = a2.residue + i * a2.modulus;
      T rem2 = rem1 - a2.coeff * w * w;
      if (rem2 < 0 || rem2 % a3.coeff != 0) continue;
      T val = rem2 / a3.coeff;
      T s;
      if (!square_root_exact(val, s)) continue;
      if (mod_floor(s, a3.modulus) == a3.residue) ++total;
      if (s != 0 && mod_floor(T(-s), a3.modulus) == a3.residue) ++total;
    }
  }
  return total;
}

}  // namespace

PolygonalOrder::PolygonalOrder(Int m) : m_(std::move(m)) {
  if (m_ < 3) throw DomainError("polygonal order must be >= 3, got " + m_.str());
}

Int eval_polygonal(const PolygonalOrder& m, const Int& x) {
  return poly_eval(m.value(), x);
}

std::optional<Int> polygonal_witness(const PolygonalOrder& m, const Int& k) {
  if (k < 0) return std::nullopt;
  const Int& mv = m.value();
  Int disc = (mv - 4) * (mv - 4) + 8 * (mv - 2) * k;
  Int s;
  if (!is_perfect_square(disc, &s)) return std::nullopt;
  Int den = 2 * (mv - 2);
  if ((mv - 4 + s) % den == 0) return (mv - 4 + s) / den;
  if ((mv - 4 - s) % den == 0) return (mv - 4 - s) / den;
  return std::nullopt;
}

TripleInvariants::TripleInvariants(const Int& a, const Int& b, const Int& c)
    : orig_{a, b, c}, canon_{a, b, c} {
  for (const Int& v : orig_)
    if (v < 3) throw DomainError("triple entries must be >= 3, got " + v.str());
  std::sort(canon_.begin(), canon_.end());
  bool all_even = (a % 2 == 0) && (b % 2 == 0) && (c % 2 == 0);
  delta_ = all_even ? 2 : 0;
  Int prod = (a - 2) * (b - 2) * (c - 2);
  lcoeff_ = (delta_ == 0 ? Int(8) : Int(2)) * prod;
  Int raw = (a - 4) * (a - 4) * (b - 2) * (c - 2) + (a - 2) * (b - 4) * (b - 4) * (c - 2) +
            (a - 2) * (b - 2) * (c - 4) * (c - 4);
  if (delta_ == 2) {
    if (raw % 4 != 0) throw std::logic_error("shift halving not exact");
    shift_ = raw / 4;
  } else {
    shift_ = raw;
  }
  level_ = (delta_ == 0 ? Int(2) : Int(1)) * prod;
  if (lcoeff_ != (delta_ == 0 ? Int(4) : Int(2)) * level_)
    throw std::logic_error("lCoeff/level identity violated");
  for (int i = 0; i < 3; ++i) {
    const Int& v = orig_[static_cast<size_t>(i)];
    Int mod = (delta_ == 0) ? Int(2 * (v - 2)) : Int(v - 2);
    Int res = (delta_ == 0) ? Int(-(v - 4)) : Int(-(v - 4) / 2);
    cosets_[static_cast<size_t>(i)] = AxisCoset{mod, mod_floor(res, mod)};
  }
}

Int TripleInvariants::target(const Int& n) const {
  if (n < 0) throw DomainError("target index must be nonnegative");
  return lcoeff_ * n + shift_;
}

std::optional<std::array<i64, 3>> TripleInvariants::as_small() const {
  if (!fits_i64(orig_[0]) || !fits_i64(orig_[1]) || !fits_i64(orig_[2])) return std::nullopt;
  return std::array<i64, 3>{static_cast<i64>(orig_[0]), static_cast<i64>(orig_[1]),
                            static_cast<i64>(orig_[2])};
}

TripleInvariants triple_invariants(const Int& a, const Int& b, const Int& c) {
  return TripleInvariants(a, b, c);
}

Int target_number(const TripleInvariants& t, const Int& n) { return t.target(n); }

u64 direct_representation_count(const TripleInvariants& t, const Int& n) {
  if (n < 0) throw DomainError("representation index must be nonnegative");
  const auto& o = t.original();
  bool small = t.as_small().has_value() && o[0] < (1 << 20) && o[1] < (1 << 20) &&
               o[2] < (1 << 20) && n < (Int(1) << 39);
  if (small) {
    return direct_count_impl<i64>(static_cast<i64>(o[0]), static_cast<i64>(o[1]),
                                  static_cast<i64>(o[2]), static_cast<i64>(n));
  }
  return direct_count_impl<Int>(o[0], o[1], o[2], n);
}

u64 coset_representation_count(const TripleInvariants& t, const Int& n) {
  Int target = t.target(n);
  const auto& o = t.original();
  const auto& cs = t.cosets();
  // axis i carries the product of the other two (x-2) factors
  std::array<Int, 3> coeff = {(o[1] - 2) * (o[2] - 2), (o[0] - 2) * (o[2] - 2),
                              (o[0] - 2) * (o[1] - 2)};
  bool small = t.as_small().has_value() && o[0] < (1 << 20) && o[1] < (1 << 20) &&
               o[2] < (1 << 20) && target < (Int(1) << 62);
  if (small) {
    std::array<CosetAxisT<i64>, 3> ax;
    for (size_t i = 0; i < 3; ++i)
      ax[i] = {static_cast<i64>(coeff[i]), static_cast<i64>(cs[i].modulus),
               static_cast<i64>(cs[i].residue)};
    return coset_count_impl<i64>(ax, static_cast<i64>(target));
  }
  std::array<CosetAxisT<Int>, 3> ax;
  for (size_t i = 0; i < 3; ++i) ax[i] = {coeff[i], cs[i].modulus, cs[i].residue};
  return coset_count_impl<Int>(ax, target);
}

}  // namespace polytriple
