#include "euclid/sample_space.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "euclid/sieve.hpp"

namespace euclid {

double SmoothedModel::xi() const { return std::pow(double(N), -alpha0); }

uint64_t SmoothedModel::window() const {
  return uint64_t(std::floor(double(N) * xi()));
}

void enumerate_pairs_block(uint64_t v_lo, uint64_t v_hi, Algo algo,
                           const std::function<void(uint64_t u, uint64_t v)>& fn) {
  if (v_hi > (uint64_t(1) << 31))
    throw std::invalid_argument("enumerate_pairs: N too large for exhaustive mode");
  Sieve sieve{uint32_t(v_hi)};
  std::vector<uint32_t> primes;
  std::vector<uint8_t> mask;
  for (uint64_t v = v_lo; v <= v_hi; ++v) {
    uint64_t u_max = (algo == Algo::Centered) ? v / 2 : v;
    if (u_max == 0) continue;
    if (v == 1) {
      if (algo != Algo::Centered) fn(1, 1);
      continue;
    }
    sieve.distinct_primes(uint32_t(v), primes);
    mask.assign(size_t(u_max) + 1, 0);
    for (uint32_t p : primes)
      for (uint64_t q = p; q <= u_max; q += p) mask[q] = 1;
    uint64_t top = std::min(u_max, v - 1);
    for (uint64_t u = 1; u <= top; ++u)
      if (!mask[u]) fn(u, v);
  }
}

void enumerate_pairs(const SampleSpace& space,
                     const std::function<void(uint64_t, uint64_t)>& fn) {
  if (space.N < 1) throw std::invalid_argument("enumerate_pairs: N >= 1");
  enumerate_pairs_block(1, space.N, space.algo, fn);
}

uint64_t count_omega(uint64_t N, Algo a) {
  if (N < 1) throw std::invalid_argument("count_omega: N >= 1");
  if (N > (uint64_t(1) << 31))
    throw std::invalid_argument("count_omega: N too large for the sieve");
  Sieve sieve{uint32_t(N)};
  uint64_t total = 0;
  if (a == Algo::Centered) {
    // #{u <= v/2 coprime to v} is phi(v)/2 for v >= 3; v = 2 contributes 1.
    if (N >= 2) total += 1;
    for (uint64_t v = 3; v <= N; ++v) total += sieve.phi[v] / 2;
  } else {
    for (uint64_t v = 1; v <= N; ++v) total += sieve.phi[v];
  }
  return total;
}

std::pair<uint64_t, uint64_t> sample_uniform(const SampleSpace& space, Rng& rng) {
  // Rejection from the [1,N]^2 grid keeps every admissible pair at equal
  // probability; acceptance is |Omega_N| / N^2.
  while (true) {
    uint64_t u = rng.uniform(space.N);
    uint64_t v = rng.uniform(space.N);
    if (u > v) continue;
    if (space.algo == Algo::Centered && 2 * u > v) continue;
    if (std::gcd(u, v) != 1) continue;
    return {u, v};
  }
}

std::pair<uint64_t, uint64_t> sample_smoothed(const SmoothedModel& model, Rng& rng) {
  uint64_t lo = model.q_lo(), hi = model.N;
  uint64_t Q = (lo == hi) ? hi : rng.uniform(lo, hi);
  SampleSpace inner = SampleSpace::exhaustive(Q, model.algo);
  return sample_uniform(inner, rng);
}

double model_distance(uint64_t N, double alpha0, Algo a, const CostFunction& c) {
  SmoothedModel model{N, a, alpha0, 0};
  uint64_t lo = model.q_lo();
  if (a == Algo::Centered && lo < 2)
    throw std::invalid_argument("model_distance: window reaches below the centered domain");

  // Cost histograms keyed by rounded value; per-denominator layering makes
  // every Omega_Q in the window a prefix of the same enumeration.
  auto key_of = [](double x) { return llround(x * 1e9); };
  std::map<long long, double> plain;            // P_N distribution
  std::map<long long, double> mixture;          // averaged P_Q distribution
  std::vector<std::map<long long, uint64_t>> per_v(N + 1);
  enumerate_pairs_block(1, N, a, [&](uint64_t u, uint64_t v) {
    Expansion e = expand(u, v, a);
    per_v[v][key_of(c.total(e))] += 1;
  });

  std::map<long long, uint64_t> prefix;
  uint64_t prefix_count = 0;
  double q_weight = 1.0 / double(N - lo + 1);
  for (uint64_t v = 1; v <= N; ++v) {
    for (auto& [k, cnt] : per_v[v]) {
      prefix[k] += cnt;
      prefix_count += cnt;
    }
    if (v >= lo) {
      for (auto& [k, cnt] : prefix)
        mixture[k] += q_weight * double(cnt) / double(prefix_count);
    }
  }
  for (auto& [k, cnt] : prefix) plain[k] = double(cnt) / double(prefix_count);

  double tv = 0.0;
  for (auto& [k, p] : mixture) {
    auto it = plain.find(k);
    double q = (it == plain.end()) ? 0.0 : it->second;
    tv += std::fabs(p - q);
  }
  for (auto& [k, q] : plain)
    if (!mixture.count(k)) tv += q;
  return 0.5 * tv;
}

}  // namespace euclid
