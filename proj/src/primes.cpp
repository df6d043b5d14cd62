#include "vbs/primes.hpp"

#include <string>

#include "vbs/error.hpp"

namespace vbs {

namespace {

const std::vector<std::uint32_t>& prime_table() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kSieveBound; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kSieveBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace

std::uint64_t sieve_prime_count() { return prime_table().size(); }

std::uint64_t nth_prime(std::uint64_t i) {
  const auto& primes = prime_table();
  if (i >= primes.size()) {
    throw Error(Errc::SieveLimit, "prime index " + std::to_string(i) + " beyond sieve");
  }
  return primes[i];
}

Integer primorial_upto_index(std::uint64_t n) {
  Integer out;
  mpz_primorial_ui(out.get_mpz_t(), nth_prime(n));
  return out;
}

bool bertrand_check(std::uint64_t y_max) {
  for (std::uint64_t y = 0; y <= y_max; ++y) {
    const std::uint64_t p = nth_prime(y);
    if (y + 1 < 64 && p > (std::uint64_t{1} << (y + 1))) return false;
  }
  return true;
}

std::vector<std::pair<Integer, std::uint64_t>> factorize(const Integer& n) {
  if (n < 1) throw Error(Errc::OutOfRange, "factorize needs a positive integer");
  std::vector<std::pair<Integer, std::uint64_t>> out;
  Integer rest = n;
  for (const std::uint32_t p : prime_table()) {
    if (rest == 1) break;
    if (Integer(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
    const Integer prime(p);
    const auto mult = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
    out.emplace_back(prime, mult);
  }
  if (rest != 1) {
    const std::uint64_t bound = prime_table().back();
    if (rest > Integer(bound) * bound && mpz_probab_prime_p(rest.get_mpz_t(), 30) == 0) {
      throw Error(Errc::OutOfRange, "cannot factor " + rest.get_str() + " by trial division");
    }
    out.emplace_back(rest, 1);
  }
  return out;
}

}  // namespace vbs
