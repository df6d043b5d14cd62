// Prime table and small-number factorization.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vbs/rational.hpp"

namespace vbs {

/// Primes up to this bound are sieved once, on first use.
inline constexpr std::uint32_t kSieveBound = 2'000'000;

/// Number of primes available to nth_prime.
std::uint64_t sieve_prime_count();

/// nthPrime: P_0 = 2, P_1 = 3, ...  Throws Errc::SieveLimit past the table.
std::uint64_t nth_prime(std::uint64_t i);

/// Product P_0 * ... * P_n.
Integer primorial_upto_index(std::uint64_t n);

/// bertrandCheck: P_y <= 2^{y+1} for every y <= y_max.
bool bertrand_check(std::uint64_t y_max);

/// Prime factorization (prime, multiplicity), ascending.  Trial division by
/// sieved primes, with the cofactor accepted when it is a probable prime.
/// Throws Errc::OutOfRange when a composite cofactor remains.
std::vector<std::pair<Integer, std::uint64_t>> factorize(const Integer& n);

}  // namespace vbs
