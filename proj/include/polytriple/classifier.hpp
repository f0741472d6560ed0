#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytriple/exceptional.hpp"
#include "polytriple/int_types.hpp"
#include "polytriple/localfield.hpp"
#include "polytriple/polynum.hpp"

namespace polytriple {

enum class Verdict {
  LocalObstruction,
  AlmostUniversal,
  AlmostUniversalOnClass,
  AlmostUniversalOutsideS,
  Inconclusive,
};

const char* to_string(Verdict v);

enum class ConditionTwoState { Vacuous, Found, NotFound };

/// Odd-prime witness: the prime divides entry `axis` minus two, and the
/// stated product is a quadratic nonresidue mod the prime.
struct PrimeWitness {
  Int prime;
  int axis = 0;
};

std::optional<PrimeWitness> find_condition_i_prime(const Int& a, const Int& b, const Int& c);

struct ConditionTwo {
  ConditionTwoState state = ConditionTwoState::NotFound;
  std::optional<PrimeWitness> witness;
};

ConditionTwo find_condition_ii_prime(const Int& a, const Int& b, const Int& c);

bool check_gcd_power_of_two(const Int& a, const Int& b, const Int& c);

/// Everything needed to re-derive the verdict from scratch.
struct WitnessChain {
  bool not_all_divisible_by_4 = false;
  bool pairwise_gcd_power_of_two = false;
  std::optional<PrimeWitness> condition_i;
  ConditionTwoState condition_ii = ConditionTwoState::NotFound;
  std::optional<PrimeWitness> condition_ii_witness;
  std::optional<int> parity_pattern;  // 1: all odd; 2: one == 2 (4); 3: one == 0 (4)
  bool distinct_mod3 = false;
  std::optional<int> shared_mod3;
  std::optional<SquareClassExclusion> exclusion;
};

struct ClassificationResult {
  explicit ClassificationResult(TripleInvariants t) : triple(std::move(t)) {}

  TripleInvariants triple;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<int> class_residue;  // mod 3, for AlmostUniversalOnClass
  std::string matched_statement;
  WitnessChain witnesses;
  std::optional<ResidueObstruction> obstruction;
  std::vector<Int> surviving_classes;
  std::vector<std::string> notes;
};

/// Decision cascade, strongest verdict first:
///   1. congruence obstruction (all orders divisible by 4)
///   2. nonresidue witness primes           -> AlmostUniversal
///   3. distinct orders mod 3 + parity      -> AlmostUniversal
///   4. equal orders mod 3 (not 2) + parity -> AlmostUniversalOnClass
///   5. some order not divisible by 4       -> AlmostUniversalOutsideS
ClassificationResult classify(const Int& a, const Int& b, const Int& c);

/// classify(m, m+1, m+2); the residual square classes always narrow to {2}.
ClassificationResult classify_consecutive(const Int& m);

/// Orders (2^k alpha + 2, 2^l beta + 2, 2^m gamma + 2) with alpha, beta,
/// gamma odd positive pairwise coprime and k >= l >= m >= 2.
ClassificationResult classify_power_family(const Int& alpha, const Int& beta, const Int& gamma,
                                           unsigned k, unsigned l, unsigned m);

enum class SpecialFamily { Fermat, Mersenne };

/// Fermat: distinct indices k >= 1, orders 2^(2^k)+3; class 2 (mod 3).
/// Mersenne: distinct odd primes p, orders 2^p+1; class 1 (mod 3).
ClassificationResult fermat_mersenne_guarantee(SpecialFamily kind, const Int& i, const Int& j,
                                               const Int& k);

/// Re-derives every boolean in the witness chain from the stored triple.
bool replay_witnesses(const ClassificationResult& r);

}  // namespace polytriple
