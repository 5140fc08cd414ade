#ifndef EUCLID_SAMPLE_SPACE_HPP
#define EUCLID_SAMPLE_SPACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "euclid/algorithms.hpp"
#include "euclid/cost.hpp"
#include "euclid/rng.hpp"

namespace euclid {

// Coprime pairs u <= v <= N (centered rule: 2u <= v <= N), uniform measure.
struct SampleSpace {
  enum class Mode { Exhaustive, MonteCarlo };

  uint64_t N = 0;
  Algo algo = Algo::Standard;
  Mode mode = Mode::Exhaustive;
  uint64_t sample_count = 0;
  uint64_t seed = 0;

  static SampleSpace exhaustive(uint64_t N, Algo a) { return {N, a, Mode::Exhaustive, 0, 0}; }
  static SampleSpace monte_carlo(uint64_t N, Algo a, uint64_t samples, uint64_t seed) {
    return {N, a, Mode::MonteCarlo, samples, seed};
  }
};

// Two-stage model: Q uniform on [N - floor(N xi), N] with xi = N^(-alpha0),
// then a uniform pair of Omega_Q.
struct SmoothedModel {
  uint64_t N = 0;
  Algo algo = Algo::Standard;
  double alpha0 = 0.25;
  uint64_t seed = 0;

  double xi() const;
  uint64_t window() const;  // floor(N * xi(N))
  uint64_t q_lo() const { return N - window(); }
};

// Streams every pair once, ordered by denominator then numerator.
// v_lo/v_hi restrict to a denominator block for partitioned consumption.
void enumerate_pairs(const SampleSpace& space,
                     const std::function<void(uint64_t u, uint64_t v)>& fn);
void enumerate_pairs_block(uint64_t v_lo, uint64_t v_hi, Algo algo,
                           const std::function<void(uint64_t u, uint64_t v)>& fn);

uint64_t count_omega(uint64_t N, Algo a);

std::pair<uint64_t, uint64_t> sample_uniform(const SampleSpace& space, Rng& rng);
std::pair<uint64_t, uint64_t> sample_smoothed(const SmoothedModel& model, Rng& rng);

// Exact total-variation distance between the cost distributions under the
// smoothed and the plain model; exhaustive over the whole Q window.
double model_distance(uint64_t N, double alpha0, Algo a, const CostFunction& c);

}  // namespace euclid

#endif  // EUCLID_SAMPLE_SPACE_HPP
