#ifndef EUCLID_SIEVE_HPP
#define EUCLID_SIEVE_HPP

#include <cstdint>
#include <vector>

namespace euclid {

// Linear sieve of smallest prime factors and totients up to n.
struct Sieve {
  explicit Sieve(uint32_t n);

  uint32_t limit() const { return uint32_t(spf.size()) - 1; }
  // Distinct prime divisors of v (v <= limit).
  void distinct_primes(uint32_t v, std::vector<uint32_t>& out) const;

  std::vector<uint32_t> spf;
  std::vector<uint32_t> phi;
};

}  // namespace euclid

#endif  // EUCLID_SIEVE_HPP
