#include "polytriple/oracles.hpp"

#include "polytriple/factor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace polytriple::oracle {

namespace {

constexpr i64 kModulusCap = i64(1) << 24;
constexpr i64 kPairWorkCap = i64(2) << 28;

i64 pow_capped(const Int& p, unsigned k) {
  Int m = int_pow(p, k);
  if (m > kModulusCap)
    throw ResourceError("oracle modulus " + m.str() + " exceeds the search budget");
  return static_cast<i64>(m);
}

struct ValueSet {
  std::vector<i64> all;   // {d x^2 mod M : x mod M}, sorted unique
  std::vector<i64> unit;  // same with p not dividing x
};

struct Bits {
  explicit Bits(i64 n) : words(static_cast<size_t>((n + 63) / 64), 0) {}
  void set(i64 i) { words[static_cast<size_t>(i >> 6)] |= u64(1) << (i & 63); }
  bool test(i64 i) const { return (words[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u; }
  std::vector<u64> words;
};

std::mutex g_mutex;

using SetKey = std::tuple<i64, i64, i64>;  // (p, M, d mod M)
std::map<SetKey, std::shared_ptr<const ValueSet>> g_sets;

using SumKey = std::tuple<i64, i64, i64>;  // (M, dlow, dhigh)
std::map<SumKey, std::shared_ptr<const Bits>> g_sums;

using ZeroKey = std::tuple<i64, i64, std::array<i64, 3>>;  // (p, M, sorted residues)
std::map<ZeroKey, bool> g_zero;

std::shared_ptr<const ValueSet> value_set(i64 p, i64 M, i64 d) {
  SetKey key{p, M, d};
  {
    std::lock_guard<std::mutex> lk(g_mutex);
    auto it = g_sets.find(key);
    if (it != g_sets.end()) return it->second;
  }
  auto vs = std::make_shared<ValueSet>();
  std::vector<char> seen_all(static_cast<size_t>(M), 0), seen_unit(static_cast<size_t>(M), 0);
  for (i64 x = 0; x < M; ++x) {
    i64 v = (d * ((x * x) % M)) % M;
    if (!seen_all[static_cast<size_t>(v)]) {
      seen_all[static_cast<size_t>(v)] = 1;
      vs->all.push_back(v);
    }
    if (x % p != 0 && !seen_unit[static_cast<size_t>(v)]) {
      seen_unit[static_cast<size_t>(v)] = 1;
      vs->unit.push_back(v);
    }
  }
  std::sort(vs->all.begin(), vs->all.end());
  std::sort(vs->unit.begin(), vs->unit.end());
  std::lock_guard<std::mutex> lk(g_mutex);
  return g_sets.emplace(key, std::move(vs)).first->second;
}

std::shared_ptr<const Bits> sum_set(i64 p, i64 M, i64 d1, i64 d2) {
  SumKey key{M, std::min(d1, d2), std::max(d1, d2)};
  {
    std::lock_guard<std::mutex> lk(g_mutex);
    auto it = g_sums.find(key);
    if (it != g_sums.end()) return it->second;
  }
  auto s1 = value_set(p, M, d1);
  auto s2 = value_set(p, M, d2);
  if (static_cast<i64>(s1->all.size()) * static_cast<i64>(s2->all.size()) > kPairWorkCap)
    throw ResourceError("oracle sum-set work exceeds the search budget");
  auto bits = std::make_shared<Bits>(M);
  for (i64 a : s1->all)
    for (i64 b : s2->all) {
      i64 s = a + b;
      if (s >= M) s -= M;
      bits->set(s);
    }
  std::lock_guard<std::mutex> lk(g_mutex);
  return g_sums.emplace(key, std::move(bits)).first->second;
}

}  // namespace

bool has_primitive_zero_mod(const std::array<Int, 3>& diag, const Int& p, unsigned k) {
  if (!is_probable_prime(p)) throw DomainError("oracle place must be prime: " + p.str());
  i64 M = pow_capped(p, k);
  i64 pi = static_cast<i64>(p);
  std::array<i64, 3> d{};
  for (size_t i = 0; i < 3; ++i) {
    if (diag[i] == 0) throw DomainError("oracle form must be non-singular");
    d[i] = static_cast<i64>(mod_floor(diag[i], Int(M)));
    if (d[i] == 0) throw DomainError("oracle precision must exceed entry valuations");
  }
  std::array<i64, 3> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  ZeroKey key{pi, M, sorted};
  {
    std::lock_guard<std::mutex> lk(g_mutex);
    auto it = g_zero.find(key);
    if (it != g_zero.end()) return it->second;
  }
  bool found = false;
  for (int unit_axis = 0; unit_axis < 3 && !found; ++unit_axis) {
    int j = (unit_axis + 1) % 3, l = (unit_axis + 2) % 3;
    auto ab = sum_set(pi, M, d[static_cast<size_t>(j)], d[static_cast<size_t>(l)]);
    auto ui = value_set(pi, M, d[static_cast<size_t>(unit_axis)]);
    for (i64 u : ui->unit) {
      i64 t = (M - u) % M;
      if (ab->test(t)) {
        found = true;
        break;
      }
    }
  }
  std::lock_guard<std::mutex> lk(g_mutex);
  g_zero[key] = found;
  return found;
}

unsigned search_exponent(const std::array<Int, 3>& diag, const Int& p) {
  unsigned e = 0;
  for (const Int& d : diag) {
    if (d == 0) throw DomainError("oracle form must be non-singular");
    Int v = d < 0 ? Int(-d) : d;
    unsigned o = 0;
    while (v % p == 0) {
      v /= p;
      ++o;
    }
    e = std::max(e, o);
  }
  return e + (p == 2 ? 5u : 3u);
}

bool isotropic_by_search(const std::array<Int, 3>& diag, const Int& p) {
  return has_primitive_zero_mod(diag, p, search_exponent(diag, p));
}

int hilbert_by_search(const Int& x, const Int& y, const Int& p) {
  if (x == 0 || y == 0) throw DomainError("hilbert symbol arguments must be nonzero");
  std::array<Int, 3> form{Int(1), Int(-x), Int(-y)};
  return isotropic_by_search(form, p) ? 1 : -1;
}

bool coset_represents_mod(const TripleInvariants& t, const Int& p, unsigned k, const Int& n) {
  i64 M = pow_capped(p, k);
  i64 pi = static_cast<i64>(p);
  i64 target = static_cast<i64>(mod_floor(t.target(n), Int(M)));

  const auto& o = t.original();
  const auto& cs = t.cosets();
  std::array<Int, 3> coeff = {(o[1] - 2) * (o[2] - 2), (o[0] - 2) * (o[2] - 2),
                              (o[0] - 2) * (o[1] - 2)};

  std::array<std::vector<i64>, 3> vals;
  for (size_t i = 0; i < 3; ++i) {
    i64 q = static_cast<i64>(mod_floor(coeff[i], Int(M)));
    // p-part of the coset modulus bounds how much of the congruence survives mod M
    unsigned mu = 0;
    Int mm = cs[i].modulus;
    while (mu < k && mm % p == 0) {
      mm /= p;
      ++mu;
    }
    i64 step = 1;
    for (unsigned e = 0; e < mu; ++e) step *= pi;
    i64 base = static_cast<i64>(mod_floor(cs[i].residue, Int(step)));
    std::vector<char> seen(static_cast<size_t>(M), 0);
    for (i64 u = base; u < M; u += step) {
      i64 v = (q * ((u * u) % M)) % M;
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        vals[i].push_back(v);
      }
    }
  }
  if (static_cast<i64>(vals[0].size()) * static_cast<i64>(vals[1].size()) > kPairWorkCap)
    throw ResourceError("coset search work exceeds the budget");
  Bits ab(M);
  for (i64 a : vals[0])
    for (i64 b : vals[1]) {
      i64 s = a + b;
      if (s >= M) s -= M;
      ab.set(s);
    }
  for (i64 c : vals[2]) {
    i64 need = target - c;
    if (need < 0) need += M;
    if (ab.test(need)) return true;
  }
  return false;
}

}  // namespace polytriple::oracle
