#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "polytriple/factor.hpp"
#include "polytriple/localfield.hpp"
#include "polytriple/oracles.hpp"
#include "test_support.hpp"

using namespace polytriple;

TEST_CASE("p-adic order") {
  CHECK(padic_order(48, 2) == 4u);
  CHECK(!padic_order(0, 7).has_value());
  CHECK(padic_order(8, 3) == 0u);
  CHECK_THROWS_AS(padic_order(10, 6), DomainError);
}

TEST_CASE("legendre symbol") {
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(2, 5) == -1);
  for (int p : {3, 5, 7, 11, 13}) CHECK(legendre_symbol(1, p) == 1);
  CHECK(legendre_symbol(21, 7) == 0);
  CHECK_THROWS_AS(legendre_symbol(3, 2), DomainError);
  // Euler check against direct squaring
  for (int p : {3, 5, 7, 11, 13, 17}) {
    std::set<int> squares;
    for (int x = 1; x < p; ++x) squares.insert(x * x % p);
    for (int u = 1; u < p; ++u)
      CHECK(legendre_symbol(u, p) == (squares.count(u) ? 1 : -1));
  }
}

TEST_CASE("hilbert symbol, pinned values") {
  CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::finite(2)) == -1);
  for (int p : {3, 5, 7})
    for (int u = 1; u < p; ++u)
      for (int w = 1; w < p; ++w)
        CHECK(hilbert_symbol(u, w, Place::finite(p)) == 1);
  CHECK_THROWS_AS(hilbert_symbol(Rational(0, 1), Rational(1, 1), Place::finite(2)), DomainError);
}

TEST_CASE("hilbert symbol agrees with the congruence search") {
  for (int p : {2, 3, 5, 7})
    for (int x = -12; x <= 12; ++x)
      for (int y = -12; y <= 12; ++y) {
        if (x == 0 || y == 0) continue;
        CHECK(hilbert_symbol(x, y, Place::finite(p)) == oracle::hilbert_by_search(x, y, p));
      }
}

TEST_CASE("hilbert symbol at high valuations agrees with the search") {
  std::vector<int> vals;
  for (int v : {1, 2, 3, 4, 8, 9, 16, 20, 25, 27, 32, 45, 48}) {
    vals.push_back(v);
    vals.push_back(-v);
  }
  for (int p : {2, 3, 5})
    for (int x : vals)
      for (int y : vals) {
        CAPTURE(x);
        CAPTURE(y);
        CAPTURE(p);
        CHECK(hilbert_symbol(x, y, Place::finite(p)) == oracle::hilbert_by_search(x, y, p));
      }
}

TEST_CASE("hilbert symbol is symmetric and bimultiplicative") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-50, 50);
  auto nonzero = [&] {
    int v = 0;
    while (v == 0) v = d(rng);
    return v;
  };
  std::vector<Place> places{Place::real(), Place::finite(2), Place::finite(3), Place::finite(5),
                            Place::finite(7), Place::finite(11)};
  for (int trial = 0; trial < 200; ++trial) {
    Rational x1(nonzero(), std::abs(nonzero()));
    Rational x2(nonzero(), std::abs(nonzero()));
    Rational y(nonzero(), std::abs(nonzero()));
    Rational x1x2(x1.num * x2.num, x1.den * x2.den);
    for (const Place& v : places) {
      CHECK(hilbert_symbol(x1, y, v) == hilbert_symbol(y, x1, v));
      CHECK(hilbert_symbol(x1x2, y, v) == hilbert_symbol(x1, y, v) * hilbert_symbol(x2, y, v));
    }
  }
}

TEST_CASE("hilbert product formula") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> d(-50, 50);
  auto nonzero = [&] {
    int v = 0;
    while (v == 0) v = d(rng);
    return v;
  };
  for (int trial = 0; trial < 200; ++trial) {
    Rational x(nonzero(), std::abs(nonzero()));
    Rational y(nonzero(), std::abs(nonzero()));
    int prod = hilbert_symbol(x, y, Place::real());
    std::set<Int> primes{2};
    for (Int v : {x.num, x.den, y.num, y.den})
      for (const auto& [p, e] : factorize(v < 0 ? Int(-v) : v)) primes.insert(p);
    for (const Int& p : primes) prod *= hilbert_symbol(x, y, Place::finite(p));
    CHECK(prod == 1);
  }
}

TEST_CASE("hasse symbol, pinned values") {
  for (int p : {2, 3, 5, 7})
    CHECK(hasse_symbol(PadicDiagForm(Place::finite(p), {1, 1, 1})) == 1);
  // derived through the independent hilbert search
  auto oracle_hasse = [](int d1, int d2, int d3, int p) {
    return oracle::hilbert_by_search(d1, d2, p) * oracle::hilbert_by_search(d1, d3, p) *
           oracle::hilbert_by_search(d2, d3, p);
  };
  CHECK(hasse_symbol(PadicDiagForm(Place::finite(2), {2, 3, 5})) == oracle_hasse(2, 3, 5, 2));
  CHECK(hasse_symbol(PadicDiagForm(Place::finite(2), {2, 3, 5})) == 1);
  CHECK(hasse_symbol(PadicDiagForm(Place::finite(2), {1, 2, 3})) == oracle_hasse(1, 2, 3, 2));
  CHECK(hasse_symbol(PadicDiagForm(Place::finite(2), {1, 2, 3})) == -1);
  CHECK_THROWS_AS(PadicDiagForm(Place::finite(2), {1, 0, 3}), DomainError);
  CHECK_THROWS_AS(PadicDiagForm(Place::real(), {1, 1, 3}), DomainError);
}

TEST_CASE("isotropy criterion, pinned values") {
  for (int p : {2, 3, 5, 7, 11})
    CHECK(is_isotropic_ternary(PadicDiagForm(Place::finite(p), {1, 1, -1})));
  CHECK(!is_isotropic_ternary(PadicDiagForm(Place::finite(2), {1, 1, 1})));
  CHECK(!is_isotropic_ternary(PadicDiagForm(Place::finite(2), {1, 2, 3})));
}

TEST_CASE("congruence search matches a plain triple loop") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(-9, 9);
  auto nonzero = [&] {
    int v = 0;
    while (v == 0) v = d(rng);
    return v;
  };
  for (int trial = 0; trial < 60; ++trial) {
    int d1 = nonzero(), d2 = nonzero(), d3 = nonzero();
    for (auto [p, k] : {std::pair<int, unsigned>{3, 3}, {2, 5}, {5, 2}}) {
      std::array<Int, 3> f{d1, d2, d3};
      bool viable = true;
      for (int v : {d1, d2, d3}) {
        int ord = 0, w = std::abs(v);
        while (w % p == 0) w /= p, ++ord;
        if (static_cast<unsigned>(ord) >= k) viable = false;
      }
      if (!viable) continue;
      CHECK(oracle::has_primitive_zero_mod(f, p, k) ==
            testsupport::naive_primitive_zero(d1, d2, d3, p, k));
    }
  }
}

TEST_CASE("isotropy decision vs search, sample") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> d(-20, 20);
  auto nonzero = [&] {
    int v = 0;
    while (v == 0) v = d(rng);
    return v;
  };
  for (int trial = 0; trial < 150; ++trial) {
    std::array<Int, 3> f{nonzero(), nonzero(), nonzero()};
    for (int p : {2, 3, 5, 7}) {
      CAPTURE(f[0].str());
      CAPTURE(f[1].str());
      CAPTURE(f[2].str());
      CAPTURE(p);
      CHECK(is_isotropic_ternary(PadicDiagForm(Place::finite(p), f)) ==
            oracle::isotropic_by_search(f, p));
    }
  }
}

TEST_CASE("anisotropic primes") {
  auto primes = [](int a, int b, int c) { return anisotropic_primes(TripleInvariants(a, b, c)); };
  CHECK(primes(3, 4, 5) == std::vector<Int>{2});
  CHECK(primes(4, 4, 4) == std::vector<Int>{2});
  CHECK(primes(3, 3, 3) == std::vector<Int>{2});
}

TEST_CASE("divisibility profiles") {
  TripleInvariants t(3, 4, 5);
  auto p2 = divisibility_profile(t, 2, 10000);
  CHECK(p2.max_order == 3);
  CHECK(p2.bounded);
  auto p3 = divisibility_profile(t, 3, 10000);
  CHECK(p3.max_order == 0);
  auto q = divisibility_profile(TripleInvariants(5, 6, 7), 2, 10000);
  CHECK(q.max_order == 2);
  CHECK(q.bounded);

  // zero shift: ord_2(16n) = 4 + ord_2(n) keeps climbing through the window
  auto unb = divisibility_profile(TripleInvariants(4, 4, 4), 2, 1000);
  CHECK(unb.max_order == 4 + 9);  // attained at n = 512
  CHECK(!unb.bounded);
}

TEST_CASE("local representability") {
  TripleInvariants t345(3, 4, 5);
  for (i64 n = 0; n <= 100; ++n) CHECK(local_coset_represents(t345, 5, n, /*verify=*/true));
  TripleInvariants t6810(6, 8, 10);
  for (i64 n = 0; n <= 100; ++n) CHECK(local_coset_represents(t6810, 2, n, /*verify=*/true));

  // (4,4,4) collapses to three squares: 2-adically representable exactly
  // when stripping fours never leaves 7 (mod 8)
  TripleInvariants sq(4, 4, 4);
  for (i64 n = 0; n <= 100; ++n) {
    i64 core = n;
    while (core && core % 4 == 0) core /= 4;
    CHECK(local_coset_represents(sq, 2, n) == (core % 8 != 7));
  }
}

TEST_CASE("congruence obstruction") {
  auto obs = residue_obstruction(TripleInvariants(4, 4, 4));
  REQUIRE(obs.has_value());
  CHECK(obs->modulus == 8);
  CHECK(obs->attained == 7);
  CHECK(obs->missing == std::vector<int>{7});

  auto shifted = residue_obstruction(TripleInvariants(4, 4, 12));
  REQUIRE(shifted.has_value());
  CHECK(shifted->modulus == 8);
  CHECK(shifted->missing == std::vector<int>{7});

  auto even8 = residue_obstruction(TripleInvariants(8, 8, 16));
  REQUIRE(even8.has_value());
  CHECK(even8->modulus == 8);
  CHECK(even8->missing == std::vector<int>{4});

  // mixed residues mod 8 attain every class mod 16 (and in fact mod 64);
  // such triples carry no congruence obstruction at all
  CHECK(!residue_obstruction(TripleInvariants(4, 8, 12)).has_value());
  CHECK(!residue_obstruction(TripleInvariants(4, 8, 20)).has_value());

  CHECK(!residue_obstruction(TripleInvariants(3, 4, 5)).has_value());
  for (int a = 3; a <= 14; ++a)
    for (int b = 3; b <= 14; ++b) {
      if (a % 4 == 0 && b % 4 == 0) continue;
      CHECK(!residue_obstruction(TripleInvariants(a, b, 8)).has_value());
    }
}

TEST_CASE("polygonal residue surjectivity, sample") {
  // odd p dividing m-2: every class mod p^4 is hit with x mod p^5
  for (auto [m, p] : {std::pair<int, int>{5, 3}, {7, 5}, {9, 7}, {13, 11}}) {
    i64 p4 = 1;
    for (int e = 0; e < 4; ++e) p4 *= p;
    i64 p5 = p4 * p;
    std::vector<char> hit(static_cast<size_t>(p4), 0);
    for (i64 x = 0; x < p5; ++x) {
      i64 val = ((i64(m) - 2) * x * x - (i64(m) - 4) * x) / 2;
      hit[static_cast<size_t>(((val % p4) + p4) % p4)] = 1;
    }
    i64 misses = 0;
    for (char h : hit) misses += (h == 0);
    CHECK(misses == 0);
  }
}
