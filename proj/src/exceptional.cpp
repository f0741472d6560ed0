#include "polytriple/exceptional.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "polytriple/factor.hpp"

namespace polytriple {

namespace {

bool is_power_of_two(const Int& x) {
  if (x <= 0) return false;
  return (x & (x - 1)) == 0;
}

bool squarefree(const Int& n) {
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

}  // namespace

std::vector<Int> squarefree_divisors(const Int& N) {
  if (N < 1) throw DomainError("squarefree divisors need N >= 1");
  std::vector<Int> primes;
  for (const auto& [p, e] : factorize(N)) primes.push_back(p);
  std::vector<Int> out{Int(1)};
  for (const Int& p : primes) {
    size_t sz = out.size();
    for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ExceptionalWitness> exceptional_membership(const TripleInvariants& t,
                                                         const Int& tDiv, const Int& n) {
  if (tDiv < 1 || t.level() % tDiv != 0)
    throw DomainError("square-class index must divide the level");
  if (!squarefree(tDiv)) throw DomainError("square-class index must be squarefree");
  Int target = t.target(n);
  if (target % tDiv != 0) return std::nullopt;
  Int q = target / tDiv, r;
  if (!is_perfect_square(q, &r)) return std::nullopt;
  if (tDiv * r * r != target) throw std::logic_error("witness identity failed");
  return ExceptionalWitness{tDiv, r};
}

std::vector<ExceptionalWitness> exceptional_union(const TripleInvariants& t, const Int& n) {
  std::vector<ExceptionalWitness> out;
  for (const Int& d : squarefree_divisors(t.level()))
    if (auto w = exceptional_membership(t, d, n)) out.push_back(*w);
  return out;
}

SquareClassExclusion square_class_exclusion(const TripleInvariants& t) {
  const auto& o = t.original();
  SquareClassExclusion ex;
  std::ostringstream det;

  std::array<Int, 3> f{o[0] - 2, o[1] - 2, o[2] - 2};
  bool pow2 = is_power_of_two(boost::multiprecision::gcd(f[0], f[1])) &&
              is_power_of_two(boost::multiprecision::gcd(f[0], f[2])) &&
              is_power_of_two(boost::multiprecision::gcd(f[1], f[2]));
  if (pow2) {
    Int op = odd_part(t.level());
    Int g = boost::multiprecision::gcd(t.shift() < 0 ? Int(-t.shift()) : t.shift(), op);
    ex.odd_primes_clean = (t.shift() == 0) ? (op == 1) : (g == 1);
    if (ex.odd_primes_clean)
      det << "odd primes of the level never divide the targets; ";
  }

  int ra = static_cast<int>(mod_floor(o[0], Int(3)));
  int rb = static_cast<int>(mod_floor(o[1], Int(3)));
  int rc = static_cast<int>(mod_floor(o[2], Int(3)));
  if (ra != rb && rb != rc && ra != rc) {
    ex.mod3 = Mod3Exclusion::Always;
    det << "targets == 2 (mod 3) for every n; ";
  } else if (ra == rb && rb == rc && ra != 2) {
    ex.mod3 = Mod3Exclusion::OnClass;
    ex.class_residue = static_cast<int>(mod_floor(Int(o[0] + 1), Int(3)));
    det << "targets == 2 (mod 3) exactly when n == " << *ex.class_residue << " (mod 3); ";
  }

  unsigned lambda = ord2(t.l_coefficient());
  if (t.shift() != 0) {
    unsigned sigma = ord2(t.shift());
    if (sigma < lambda) {
      ex.constant_ord2 = sigma;
      ex.ord2_excludes_2r2 = (sigma % 2 == 0);
      det << "ord_2(target) constant = " << sigma << "; ";
    }
    // tie or shift-dominated: the order varies with n, both parities occur
  }
  ex.details = det.str();
  return ex;
}

std::vector<Int> surviving_square_classes(const TripleInvariants& t,
                                          const SquareClassExclusion& ex) {
  std::vector<Int> out;
  std::vector<Int> candidates;
  if (ex.odd_primes_clean) {
    candidates.push_back(1);
    if (t.level() % 2 == 0) candidates.push_back(2);
  } else {
    candidates = squarefree_divisors(t.level());
  }
  for (const Int& d : candidates) {
    if (d == 1 && ex.mod3 == Mod3Exclusion::Always) continue;
    if (d == 2 && ex.ord2_excludes_2r2) continue;
    if (d > 2 && ex.odd_primes_clean && odd_part(d) > 1) continue;
    out.push_back(d);
  }
  return out;
}

}  // namespace polytriple
