#ifndef EUCLID_KERNELS_HPP
#define EUCLID_KERNELS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "euclid/algorithms.hpp"
#include "euclid/cost.hpp"

namespace euclid {

// Exhaustive sweeps over the coprime pairs with v <= N are the one hot loop
// of the project: billions of short division chains with a data-parallel
// step. The chain arithmetic exists twice, as an exact integer reference
// kernel and as an AVX2 variant running four chains per vector register in
// double precision (exact for v < 2^50; see kernels_avx2.cpp). The variant is
// selected at runtime and both must produce identical integer statistics.
enum class SimdMode { Auto, Scalar, Avx2 };

SimdMode simd_mode_from_string(const std::string& s);
bool avx2_supported();
// Auto resolves to Avx2 when compiled in and supported, else Scalar.
// The environment variable EUCLID_SIMD (scalar|avx2|auto) overrides Auto.
SimdMode resolve_simd_mode(SimdMode requested);
const char* simd_mode_name(SimdMode m);

// Half-open cost window (lo, hi]; pairs with C inside are counted exactly.
struct CostWindow {
  double lo, hi;
};

struct SweepConfig {
  Algo algo = Algo::Standard;
  uint64_t n_max = 0;
  std::vector<uint64_t> snapshots;  // sorted, last == n_max

  const CostFunction* cost = nullptr;  // null or unit: P-only fast path
  // Real-valued cost histogram: bin k covers (k*width, (k+1)*width] shifted
  // to [0, ...); the last bin absorbs overflow.
  double hist_width = 1e-5;
  uint32_t hist_bins = 0;
  uint32_t int_hist_bins = 0;  // integer-valued cost histogram size
  std::vector<CostWindow> windows;
};

struct SweepStats {
  uint64_t pairs = 0;
  uint64_t sum_p = 0;
  uint64_t sum_p2 = 0;
  double sum_c = 0.0, sum_c_comp = 0.0;
  double sum_c2 = 0.0, sum_c2_comp = 0.0;
  std::vector<uint64_t> p_hist;
  std::vector<uint64_t> c_int_hist;
  std::vector<uint64_t> c_hist;
  std::vector<uint64_t> window_counts;

  void init(const SweepConfig& cfg);
  void merge(const SweepStats& other);
  void add_c(double c);        // Kahan update of sum_c/sum_c2
  double mean_p() const { return double(sum_p) / double(pairs); }
  double var_p() const;
  double mean_c() const { return sum_c / double(pairs); }
  double var_c() const;
};

struct SweepResult {
  uint64_t N = 0;
  SweepStats stats;
};

// One cumulative SweepStats per snapshot. shard_count partitions the
// denominator range; results are merged in range order, so totals are
// independent of the partitioning up to float summation order (integer
// fields are exactly invariant).
std::vector<SweepResult> run_sweep(const SweepConfig& cfg, int shard_count,
                                   int thread_count, SimdMode mode = SimdMode::Auto);

namespace detail {

struct KernelJob {
  Algo algo;
  const double* cost_tab = nullptr;  // interleaved [2m + (sign<0)], null = unit
  bool integer_cost = false;
  bool unit_cost = true;
  double inv_hist_width = 0.0;
  const CostWindow* windows = nullptr;
  size_t n_windows = 0;
};

void sweep_chunk_scalar(const KernelJob& job, const uint32_t* us, const uint32_t* vs,
                        size_t count, SweepStats& st);
#if defined(EUCLID_HAVE_AVX2)
void sweep_chunk_avx2(const KernelJob& job, const uint32_t* us, const uint32_t* vs,
                      size_t count, SweepStats& st);
#endif

// Shared termination bookkeeping for both kernels; hot, so kept inline.
inline void record_pair(const KernelJob& job, uint32_t p, double c, SweepStats& st) {
  st.pairs += 1;
  st.sum_p += p;
  st.sum_p2 += uint64_t(p) * p;
  if (p < st.p_hist.size()) st.p_hist[p] += 1;
  if (job.unit_cost) return;
  st.add_c(c);
  if (job.integer_cost) {
    size_t k = size_t(c + 0.5);
    if (k >= st.c_int_hist.size()) k = st.c_int_hist.size() - 1;
    st.c_int_hist[k] += 1;
  } else if (!st.c_hist.empty()) {
    size_t k = size_t(c * job.inv_hist_width);
    if (k >= st.c_hist.size()) k = st.c_hist.size() - 1;
    st.c_hist[k] += 1;
  }
  for (size_t i = 0; i < job.n_windows; ++i)
    if (c > job.windows[i].lo && c <= job.windows[i].hi) st.window_counts[i] += 1;
}

}  // namespace detail

}  // namespace euclid

#endif  // EUCLID_KERNELS_HPP
