#ifndef EUCLID_STATS_HPP
#define EUCLID_STATS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "euclid/kernels.hpp"
#include "euclid/sample_space.hpp"

namespace euclid {

struct Histogram {
  double origin = 0.0;
  double width = 1.0;
  std::vector<uint64_t> counts;
  uint64_t total() const;
};

struct CostSummary {
  uint64_t N = 0;
  Algo algo = Algo::Standard;
  std::string cost_name;
  uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  Histogram hist;
  std::string mode;  // "exhaustive" | "mc" | "smoothed"
  uint64_t samples = 0;
  uint64_t seed = 0;
};

struct LltReport {
  uint64_t N = 0;
  double x = 0.0;
  double j_lo = 0.0, j_hi = 0.0;  // half-open (j_lo, j_hi]
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double ci_halfwidth = 0.0;  // 0 in exhaustive mode
};

// Cached exhaustive sweep: one pass over v <= max N with cumulative
// snapshots, from which summaries, KS distances, characteristic function
// values and window probabilities are all derived.
class ExhaustiveRun {
 public:
  static ExhaustiveRun compute(Algo algo, const CostFunction& cost,
                               std::vector<uint64_t> snapshots,
                               std::vector<CostWindow> windows = {},
                               int shards = 16, int threads = 0,
                               SimdMode mode = SimdMode::Auto);

  const std::vector<uint64_t>& snapshots() const { return snapshots_; }
  const SweepStats& at(uint64_t N) const;
  CostSummary summary(uint64_t N) const;
  // Exact for integer-valued costs; for real costs computed from the fine
  // histogram with |error| <= tau*width/2, reported through bin_error.
  std::complex<double> char_fn(uint64_t N, double tau, double* bin_error = nullptr) const;
  double ks_distance(uint64_t N, double mu, double delta) const;
  double window_probability(uint64_t N, size_t window_index) const;
  const CostFunction& cost() const { return *cost_; }
  Algo algo() const { return algo_; }

 private:
  Algo algo_ = Algo::Standard;
  const CostFunction* cost_ = nullptr;
  std::string cost_name_;
  bool integer_cost_ = true;
  double hist_width_ = 1e-5;
  std::vector<uint64_t> snapshots_;
  std::vector<SweepResult> results_;
};

CostSummary summarize(const SampleSpace& space, const CostFunction& c);
CostSummary summarize(const SmoothedModel& model, uint64_t samples, const CostFunction& c);

std::complex<double> empirical_char_fn(const SampleSpace& space, const CostFunction& c,
                                       double tau);
std::complex<double> empirical_char_fn(const SmoothedModel& model, uint64_t samples,
                                       const CostFunction& c, double tau);

struct CltRow {
  uint64_t N = 0;
  double ks = 0.0;
};

// KS distance between the empirical law of (C - mu log N)/(delta sqrt(log N))
// and the standard normal, per N (exhaustive).
std::vector<CltRow> clt_table(const std::vector<uint64_t>& Ns, const CostFunction& c,
                              Algo algo, double mu, double delta,
                              int threads = 0);

LltReport llt_exhaustive(const ExhaustiveRun& run, uint64_t N, double x,
                         double j_lo, double j_hi, double mu, double delta,
                         size_t window_index);
LltReport llt_estimate(uint64_t N, double x, double j_lo, double j_hi,
                       const CostFunction& c, Algo algo, double mu, double delta,
                       const SampleSpace& space);

struct DecayFit {
  double tau = 0.0;
  std::vector<uint64_t> Ns;
  std::vector<double> moduli;
  double gamma_hat = 0.0;
  double fit_residual = 0.0;
  bool tau_zero_warning = false;
  double bin_error = 0.0;
};

// Least-squares slope of log|E_N| against log N; lattice costs reject
// |tau| > pi / L_c (outside the decay range).
DecayFit charfn_decay(double tau, const std::vector<uint64_t>& Ns,
                      const CostFunction& c, Algo algo, int threads = 0);
DecayFit charfn_decay(double tau, const ExhaustiveRun& run);

struct GrowthFit {
  double mu_hat = 0.0;
  double mean_intercept = 0.0;
  double mean_r2 = 0.0;
  double delta2_hat = 0.0;
  double var_intercept = 0.0;
  double var_r2 = 0.0;
};

GrowthFit growth_regression(const std::vector<CostSummary>& summaries);

double normal_cdf(double z);

// KS distance between a discrete sample given as (value, count) atoms and
// the standard normal after the affine standardization (v - shift)/scale.
double ks_vs_normal(const std::vector<std::pair<double, uint64_t>>& atoms,
                    double shift, double scale);

}  // namespace euclid

#endif  // EUCLID_STATS_HPP
