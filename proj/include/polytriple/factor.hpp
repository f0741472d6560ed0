#pragma once

#include <utility>
#include <vector>

#include "polytriple/int_types.hpp"

namespace polytriple {

bool is_probable_prime(const Int& n);

/// Ascending (prime, exponent) pairs for n >= 1. Trial division up to 1e6,
/// Pollard-Brent rho beyond that; deterministic.
std::vector<std::pair<Int, unsigned>> factorize(Int n);

/// n with all factors of two removed (n != 0).
Int odd_part(Int n);

/// Distinct odd prime divisors, ascending.
std::vector<Int> odd_prime_divisors(const Int& n);

}  // namespace polytriple
