#include "polytriple/search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "polytriple/factor.hpp"

namespace polytriple {

u64 BitSet::count() const {
  if (words_.empty()) return 0;
  u64 n = 0;
  for (size_t i = 0; i + 1 < words_.size(); ++i)
    n += static_cast<u64>(__builtin_popcountll(words_[i]));
  return n + static_cast<u64>(__builtin_popcountll(words_.back() & tail_mask()));
}

bool BitSet::operator==(const BitSet& o) const {
  if (bits_ != o.bits_) return false;
  if (words_.empty()) return true;
  for (size_t i = 0; i + 1 < words_.size(); ++i)
    if (words_[i] != o.words_[i]) return false;
  return (words_.back() & tail_mask()) == (o.words_.back() & o.tail_mask());
}

void BitSet::or_shifted(const BitSet& src, u64 shift, u64 word_begin, u64 word_end) {
  const u64 q = shift >> 6, r = shift & 63;
  const u64 nsrc = src.words_.size();
  for (u64 i = std::max(word_begin, q); i < word_end; ++i) {
    u64 acc = 0;
    u64 lo = i - q;
    if (lo < nsrc) acc = src.words_[lo] << r;
    if (r != 0 && lo >= 1 && lo - 1 < nsrc) acc |= src.words_[lo - 1] >> (64 - r);
    words_[i] |= acc;
  }
}

std::vector<i64> polygonal_values_upto(i64 m, i64 bound) {
  if (m < 3) throw DomainError("polygonal order must be >= 3");
  if (m > (i64(1) << 40) || bound > (i64(1) << 40))
    throw ResourceError("value list beyond the word-arithmetic range");
  auto eval = [m](i64 x) { return ((m - 2) * x * x - (m - 4) * x) / 2; };
  std::vector<i64> vals;
  for (i64 x = 0;; ++x) {
    i64 v = eval(x);
    if (v > bound) break;
    vals.push_back(v);
  }
  for (i64 x = -1;; --x) {
    i64 v = eval(x);
    if (v > bound) break;
    vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

BitSet represented_sieve(const TripleInvariants& t, u64 bound, const SieveConfig& cfg) {
  if (bound < 1) throw DomainError("sieve bound must be >= 1");
  auto small = t.as_small();
  if (!small || (*small)[0] > (i64(1) << 20) || (*small)[1] > (i64(1) << 20) ||
      (*small)[2] > (i64(1) << 20))
    throw ResourceError("sieve needs word-sized orders");
  if (bound > (u64(1) << 40)) throw ResourceError("sieve bound beyond the supported range");
  u64 words = (bound + 1 + 63) / 64;
  if (2 * words * 8 > cfg.memory_cap_bytes)
    throw ResourceError("sieve bit sets would exceed the memory cap (" +
                        std::to_string(2 * words * 8) + " bytes needed)");

  std::array<std::vector<i64>, 3> vals;
  for (size_t i = 0; i < 3; ++i)
    vals[i] = polygonal_values_upto((*small)[i], static_cast<i64>(bound));
  // shortest list drives the shift loop; the other two feed the pair marking
  size_t shift_axis = 0;
  for (size_t i = 1; i < 3; ++i)
    if (vals[i].size() < vals[shift_axis].size()) shift_axis = i;
  const auto& va = vals[(shift_axis + 1) % 3];
  const auto& vb = vals[(shift_axis + 2) % 3];
  const auto& vc = vals[shift_axis];

  BitSet scratch(bound + 1);
  for (i64 x : va) {
    for (i64 y : vb) {
      i64 s = x + y;
      if (s > static_cast<i64>(bound)) break;
      scratch.set(static_cast<u64>(s));
    }
  }

  BitSet result(bound + 1);
  unsigned workers = cfg.workers ? cfg.workers
                                 : std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  u64 total_words = result.word_count();
  workers = static_cast<unsigned>(std::min<u64>(workers, total_words));
  auto run = [&](u64 wb, u64 we) {
    for (i64 v : vc) result.or_shifted(scratch, static_cast<u64>(v), wb, we);
  };
  if (workers <= 1) {
    run(0, total_words);
  } else {
    std::vector<std::thread> pool;
    u64 chunk = (total_words + workers - 1) / workers;
    for (unsigned wi = 0; wi < workers; ++wi) {
      u64 wb = wi * chunk, we = std::min(total_words, wb + chunk);
      if (wb >= we) break;
      pool.emplace_back(run, wb, we);
    }
    for (auto& th : pool) th.join();
  }
  return result;
}

RepresentationReport gap_report(const TripleInvariants& t, u64 bound, u64 window_start,
                                const SieveConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  BitSet bits = represented_sieve(t, bound, cfg);

  RepresentationReport rep;
  rep.triple = t.original();
  rep.bound = bound;
  rep.window_start = window_start;
  rep.obstruction = residue_obstruction(t);

  std::vector<Int> divisors = squarefree_divisors(t.level());
  for (u64 n = 0; n <= bound; ++n) {
    if (bits.test(n)) continue;
    GapAnnotation g;
    g.n = n;
    for (const Int& d : divisors)
      if (auto w = exceptional_membership(t, d, Int(n))) g.witnesses.push_back(*w);
    if (rep.obstruction) {
      int cls = static_cast<int>(n % static_cast<u64>(rep.obstruction->modulus));
      g.residue_missed = std::find(rep.obstruction->missing.begin(),
                                   rep.obstruction->missing.end(),
                                   cls) != rep.obstruction->missing.end();
    }
    g.tension = !rep.obstruction && g.witnesses.empty() && n >= window_start;
    if (g.tension) ++rep.tension_count;
    rep.gaps.push_back(std::move(g));
  }
  rep.represented = bound + 1 - rep.gaps.size();
  if (!rep.gaps.empty()) rep.largest_gap = rep.gaps.back().n;

  // spot re-verification of the sieve against the direct counter
  size_t nsamples = std::min<size_t>(rep.gaps.size(), 5);
  for (size_t s = 0; s < nsamples; ++s) {
    const auto& g = rep.gaps[s * (rep.gaps.size() - 1) / std::max<size_t>(1, nsamples - 1)];
    if (direct_representation_count(t, Int(g.n)) != 0)
      throw std::logic_error("sieve reported a representable gap at n = " + std::to_string(g.n));
  }

  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

ConsecutiveCheck verify_consecutive_finiteness(const Int& m, u64 bound, u64 window_start,
                                               const SieveConfig& cfg) {
  if (m < 3) throw DomainError("consecutive family needs m >= 3");
  if (window_start >= bound) throw DomainError("window must start below the bound");
  TripleInvariants t(m, m + 1, m + 2);
  BitSet bits = represented_sieve(t, bound, cfg);
  ConsecutiveCheck chk;
  for (u64 n = 0; n <= bound; ++n) {
    if (bits.test(n)) continue;
    ++chk.total_gaps;
    if (n < window_start) continue;
    ++chk.gaps_in_window;
    if (!exceptional_membership(t, Int(2), Int(n))) chk.offenders.push_back(n);
  }
  chk.all_explained = chk.offenders.empty();
  return chk;
}

}  // namespace polytriple
