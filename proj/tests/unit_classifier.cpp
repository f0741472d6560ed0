#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polytriple/classifier.hpp"

using namespace polytriple;

TEST_CASE("pairwise gcd power of two") {
  CHECK(check_gcd_power_of_two(3, 5, 9));
  CHECK(!check_gcd_power_of_two(5, 8, 11));  // gcd(3, 9) = 3
  CHECK(check_gcd_power_of_two(3, 3, 3));
  CHECK(check_gcd_power_of_two(4, 6, 10));  // gcds 2, 4, 2
}

TEST_CASE("first witness prime") {
  auto w = find_condition_i_prime(3, 5, 9);
  REQUIRE(w.has_value());
  CHECK(w->prime == 7);
  CHECK(w->axis == 2);

  auto w2 = find_condition_i_prime(3, 4, 7);
  REQUIRE(w2.has_value());
  CHECK(w2->prime == 5);

  CHECK(!find_condition_i_prime(3, 4, 4).has_value());
}

TEST_CASE("second witness prime") {
  auto c1 = find_condition_ii_prime(3, 4, 7);
  CHECK(c1.state == ConditionTwoState::NotFound);  // 2*1*2 = 4 is a residue mod 5

  auto c2 = find_condition_ii_prime(3, 6, 13);
  CHECK(c2.state == ConditionTwoState::Found);
  REQUIRE(c2.witness.has_value());
  CHECK(c2.witness->prime == 11);

  CHECK(find_condition_ii_prime(3, 5, 7).state == ConditionTwoState::Vacuous);
}

TEST_CASE("classification cascade") {
  auto r = classify(3, 5, 9);
  CHECK(r.verdict == Verdict::AlmostUniversal);
  CHECK(r.matched_statement == "nonresidue-criterion");
  REQUIRE(r.witnesses.condition_i.has_value());
  CHECK(r.witnesses.condition_i->prime == 7);
  CHECK(r.witnesses.condition_ii == ConditionTwoState::Vacuous);
  CHECK(replay_witnesses(r));

  auto r567 = classify(5, 6, 7);
  CHECK(r567.verdict == Verdict::AlmostUniversal);
  CHECK(r567.matched_statement == "mod3-distinct");
  CHECK(r567.witnesses.parity_pattern == 2);
  CHECK(replay_witnesses(r567));

  auto r444 = classify(4, 4, 4);
  CHECK(r444.verdict == Verdict::LocalObstruction);
  CHECK(r444.matched_statement == "local-obstruction/mod8");
  REQUIRE(r444.obstruction.has_value());
  CHECK(r444.obstruction->attained == 7);
  CHECK(replay_witnesses(r444));

  auto r345 = classify(3, 4, 5);
  CHECK(r345.verdict == Verdict::AlmostUniversalOutsideS);
  CHECK(r345.matched_statement == "square-class-fallback");
  bool noted = false;
  for (const auto& n : r345.notes) noted |= (n.find("universal") != std::string::npos);
  CHECK(noted);

  // all divisible by 4 with mixed residues mod 8: nothing applies
  auto mixed = classify(4, 8, 12);
  CHECK(mixed.verdict == Verdict::Inconclusive);

  CHECK_THROWS_AS(classify(2, 4, 5), DomainError);
}

TEST_CASE("classification ignores the order of the triple") {
  std::mt19937 rng(47);
  std::uniform_int_distribution<int> d(3, 16);
  for (int trial = 0; trial < 30; ++trial) {
    int v[3] = {d(rng), d(rng), d(rng)};
    auto ref = classify(v[0], v[1], v[2]);
    auto perm = classify(v[2], v[0], v[1]);
    CHECK(ref.verdict == perm.verdict);
    CHECK(ref.matched_statement == perm.matched_statement);
    CHECK(ref.class_residue == perm.class_residue);
  }
}

TEST_CASE("no obstruction verdict without full divisibility by 4") {
  for (int a = 3; a <= 15; ++a)
    for (int b = 3; b <= 15; ++b)
      for (int c = 3; c <= 15; ++c) {
        if (a % 4 == 0 && b % 4 == 0 && c % 4 == 0) continue;
        CHECK(classify(a, b, c).verdict != Verdict::LocalObstruction);
      }
}

TEST_CASE("consecutive families") {
  auto r5 = classify_consecutive(5);
  CHECK(r5.verdict == Verdict::AlmostUniversal);
  auto r9 = classify_consecutive(9);
  CHECK(r9.verdict == Verdict::AlmostUniversal);

  auto r4 = classify_consecutive(4);
  CHECK(r4.verdict == Verdict::AlmostUniversalOutsideS);
  CHECK(r4.surviving_classes == std::vector<Int>{2});

  auto r3 = classify_consecutive(3);
  CHECK(r3.surviving_classes.size() <= 1);
  for (const Int& d : r3.surviving_classes) CHECK(d == 2);

  // every consecutive family narrows to the doubled class
  for (int m = 3; m <= 40; ++m) {
    auto r = classify_consecutive(m);
    for (const Int& d : r.surviving_classes) CHECK(d == 2);
    CHECK(replay_witnesses(r));
  }
  CHECK_THROWS_AS(classify_consecutive(2), DomainError);
}

TEST_CASE("power families") {
  // (alpha, beta, gamma) = (1, 5, 3), equal exponents -> orders (6, 22, 14)
  auto r = classify_power_family(1, 5, 3, 2, 2, 2);
  CHECK(r.verdict == Verdict::AlmostUniversal);
  CHECK(r.matched_statement == "power-family/equal-exponents");
  CHECK(r.triple.original() == std::array<Int, 3>{6, 22, 14});
  REQUIRE(r.witnesses.exclusion.has_value());
  CHECK(r.witnesses.exclusion->constant_ord2 == 4u);
  CHECK(replay_witnesses(r));

  // strictly descending top exponent with equal parities
  auto r2 = classify_power_family(1, 5, 3, 4, 2, 2);
  CHECK(r2.verdict == Verdict::AlmostUniversal);
  CHECK(r2.matched_statement == "power-family/descending-exponents");
  CHECK(replay_witnesses(r2));

  // k - m = 1 misses the tied-exponent gate: no family statement applies
  auto gap1 = classify_power_family(1, 1, 3, 3, 3, 2);
  CHECK(gap1.matched_statement.find("power-family") == std::string::npos);
  bool unmatched = false;
  for (const auto& n : gap1.notes) unmatched |= (n.find("no power-family") != std::string::npos);
  CHECK(unmatched);

  CHECK_THROWS_AS(classify_power_family(1, 5, 3, 2, 2, 1), DomainError);  // m < 2
  CHECK_THROWS_AS(classify_power_family(3, 9, 5, 2, 2, 2), DomainError);     // gcd(3, 9) > 1
  CHECK_THROWS_AS(classify_power_family(2, 5, 3, 2, 2, 2), DomainError);     // even multiplier
  CHECK_THROWS_AS(classify_power_family(1, 5, 3, 2, 3, 2), DomainError);     // k < l
}

TEST_CASE("tied-exponent family falls back when the square exclusion fails") {
  // hypotheses of the tied pattern hold, but targets are == 1 (mod 3), so the
  // plain square class cannot be ruled out by this route
  auto r = classify_power_family(1, 1, 3, 5, 5, 2);
  CHECK(r.triple.original() == std::array<Int, 3>{34, 34, 14});
  CHECK(r.verdict == Verdict::AlmostUniversalOutsideS);
  CHECK(r.surviving_classes == std::vector<Int>{1});
  CHECK(mod_floor(r.triple.target(0), Int(3)) == 1);
  bool noted = false;
  for (const auto& n : r.notes) noted |= (n.find("did not verify") != std::string::npos);
  CHECK(noted);
}

TEST_CASE("doubly exponential families") {
  auto f = fermat_mersenne_guarantee(SpecialFamily::Fermat, 1, 2, 3);
  CHECK(f.verdict == Verdict::AlmostUniversalOnClass);
  CHECK(f.class_residue == 2);
  CHECK(f.triple.original() == std::array<Int, 3>{7, 19, 259});
  CHECK(replay_witnesses(f));

  auto m = fermat_mersenne_guarantee(SpecialFamily::Mersenne, 3, 5, 7);
  CHECK(m.verdict == Verdict::AlmostUniversalOnClass);
  CHECK(m.class_residue == 1);
  CHECK(m.triple.original() == std::array<Int, 3>{9, 33, 129});
  CHECK(replay_witnesses(m));

  // large members stay exact
  auto big = fermat_mersenne_guarantee(SpecialFamily::Fermat, 5, 6, 7);
  CHECK(big.verdict == Verdict::AlmostUniversalOnClass);
  CHECK(big.class_residue == 2);

  // 2^11 - 1 = 23 * 89 is composite; only the index must be prime, the
  // members just need pairwise coprimality
  auto comp = fermat_mersenne_guarantee(SpecialFamily::Mersenne, 3, 5, 11);
  CHECK(comp.verdict == Verdict::AlmostUniversalOnClass);
  CHECK(comp.class_residue == 1);

  CHECK_THROWS_AS(fermat_mersenne_guarantee(SpecialFamily::Fermat, 2, 2, 3), DomainError);
  CHECK_THROWS_AS(fermat_mersenne_guarantee(SpecialFamily::Mersenne, 3, 5, 9), DomainError);
  CHECK_THROWS_AS(fermat_mersenne_guarantee(SpecialFamily::Mersenne, 2, 3, 5), DomainError);
}

TEST_CASE("replay rejects tampered witness chains") {
  auto r = classify(3, 5, 9);
  REQUIRE(r.verdict == Verdict::AlmostUniversal);
  REQUIRE(replay_witnesses(r));

  auto tampered = r;
  tampered.witnesses.condition_i->prime = 3;  // divides 9-2 = 7? no: fails divisibility
  CHECK(!replay_witnesses(tampered));

  auto wrong_axis = r;
  wrong_axis.witnesses.condition_i->axis = 0;  // 7 does not divide 3-2
  CHECK(!replay_witnesses(wrong_axis));

  auto dropped = r;
  dropped.witnesses.condition_i.reset();
  CHECK(!replay_witnesses(dropped));

  auto forged = classify(5, 6, 7);
  REQUIRE(forged.verdict == Verdict::AlmostUniversal);
  forged.matched_statement = "nonresidue-criterion";  // claims a route it cannot back
  CHECK(!replay_witnesses(forged));

  auto obs = classify(4, 4, 4);
  auto fake = obs;
  fake.obstruction->modulus = 16;
  CHECK(!replay_witnesses(fake));
}

TEST_CASE("soundness replay across a block of triples") {
  for (int a = 3; a <= 12; ++a)
    for (int b = 3; b <= 12; ++b)
      for (int c = 3; c <= 12; ++c) {
        auto r = classify(a, b, c);
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        CHECK(replay_witnesses(r));
        if (r.verdict == Verdict::AlmostUniversal) CHECK(r.surviving_classes.empty());
      }
}
