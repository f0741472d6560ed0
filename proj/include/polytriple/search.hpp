#pragma once

#include <array>
#include <optional>
#include <vector>

#include "polytriple/exceptional.hpp"
#include "polytriple/int_types.hpp"
#include "polytriple/localfield.hpp"
#include "polytriple/polynum.hpp"

namespace polytriple {

/// Fixed-size bit set over [0, bits).
class BitSet {
 public:
  explicit BitSet(u64 bits) : words_((bits + 63) / 64, 0), bits_(bits) {}

  u64 size() const { return bits_; }
  void set(u64 i) { words_[i >> 6] |= u64(1) << (i & 63); }
  bool test(u64 i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  u64 count() const;

  /// For every destination word w in [word_begin, word_end):
  /// this[bit] |= src[bit - shift]. Deterministic per word.
  void or_shifted(const BitSet& src, u64 shift, u64 word_begin, u64 word_end);

  u64 word_count() const { return words_.size(); }
  bool operator==(const BitSet& o) const;

 private:
  u64 tail_mask() const {
    unsigned rem = bits_ & 63;
    return rem ? (u64(1) << rem) - 1 : ~u64(0);
  }

  std::vector<u64> words_;
  u64 bits_;
};

struct SieveConfig {
  u64 memory_cap_bytes = u64(512) << 20;
  unsigned workers = 0;  // 0: hardware default
};

/// All P_m(x) <= bound over x in Z, sorted unique.
std::vector<i64> polygonal_values_upto(i64 m, i64 bound);

/// Bit n set iff P_a(x)+P_b(y)+P_c(z) = n for some integers x, y, z;
/// bits cover [0, bound] inclusive. Output is identical for any worker count.
BitSet represented_sieve(const TripleInvariants& t, u64 bound, const SieveConfig& cfg = {});

struct GapAnnotation {
  u64 n = 0;
  std::vector<ExceptionalWitness> witnesses;  // square-class certificates
  bool residue_missed = false;  // the gap's class is missing mod the obstruction modulus
  bool tension = false;         // unexplained gap at or above the window
};

struct RepresentationReport {
  std::array<Int, 3> triple;
  u64 bound = 0;
  u64 window_start = 0;
  std::vector<GapAnnotation> gaps;
  std::optional<u64> largest_gap;
  u64 represented = 0;
  std::optional<ResidueObstruction> obstruction;
  u64 tension_count = 0;
  double elapsed_ms = 0.0;
};

/// Sieve + annotate every gap with its exceptional witnesses and the
/// obstruction relation; gaps at or above window_start with neither
/// explanation are flagged as tension items (never fatal).
RepresentationReport gap_report(const TripleInvariants& t, u64 bound, u64 window_start = 1000,
                                const SieveConfig& cfg = {});

struct ConsecutiveCheck {
  bool all_explained = true;
  std::vector<u64> offenders;  // gaps in the window without a 2r^2 certificate
  u64 gaps_in_window = 0;
  u64 total_gaps = 0;
};

/// Every gap of (m, m+1, m+2) in [window_start, bound] must satisfy
/// target = 2 r^2 exactly.
ConsecutiveCheck verify_consecutive_finiteness(const Int& m, u64 bound, u64 window_start,
                                               const SieveConfig& cfg = {});

}  // namespace polytriple
