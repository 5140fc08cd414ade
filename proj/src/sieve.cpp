#include "euclid/sieve.hpp"

#include <stdexcept>

namespace euclid {

Sieve::Sieve(uint32_t n) {
  if (n < 1) n = 1;
  spf.assign(size_t(n) + 1, 0);
  phi.assign(size_t(n) + 1, 0);
  phi[1] = 1;
  std::vector<uint32_t> primes;
  primes.reserve(size_t(n) / 10 + 16);
  for (uint32_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      phi[i] = i - 1;
      primes.push_back(i);
    }
    for (uint32_t p : primes) {
      uint64_t ip = uint64_t(i) * p;
      if (p > spf[i] || ip > n) break;
      spf[ip] = p;
      phi[ip] = (i % p == 0) ? phi[i] * p : phi[i] * (p - 1);
    }
  }
}

void Sieve::distinct_primes(uint32_t v, std::vector<uint32_t>& out) const {
  out.clear();
  if (v >= spf.size()) throw std::out_of_range("Sieve::distinct_primes");
  while (v > 1) {
    uint32_t p = spf[v];
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
}

}  // namespace euclid
