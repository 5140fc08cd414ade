#include "euclid/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "euclid/sieve.hpp"

namespace euclid {

SimdMode simd_mode_from_string(const std::string& s) {
  if (s == "auto") return SimdMode::Auto;
  if (s == "scalar") return SimdMode::Scalar;
  if (s == "avx2") return SimdMode::Avx2;
  throw std::invalid_argument("unknown simd mode '" + s + "'");
}

const char* simd_mode_name(SimdMode m) {
  switch (m) {
    case SimdMode::Auto: return "auto";
    case SimdMode::Scalar: return "scalar";
    case SimdMode::Avx2: return "avx2";
  }
  return "?";
}

bool avx2_supported() {
#if defined(EUCLID_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

SimdMode resolve_simd_mode(SimdMode requested) {
  if (requested == SimdMode::Auto) {
    if (const char* env = std::getenv("EUCLID_SIMD")) {
      SimdMode m = simd_mode_from_string(env);
      if (m != SimdMode::Auto) return resolve_simd_mode(m);
    }
    return avx2_supported() ? SimdMode::Avx2 : SimdMode::Scalar;
  }
  if (requested == SimdMode::Avx2 && !avx2_supported())
    throw std::runtime_error("avx2 kernels not available on this machine");
  return requested;
}

void SweepStats::init(const SweepConfig& cfg) {
  p_hist.assign(160, 0);
  if (cfg.cost && cfg.cost->kind() != CostFunction::Kind::Unit) {
    if (cfg.cost->integer_valued())
      c_int_hist.assign(cfg.int_hist_bins ? cfg.int_hist_bins : 4096, 0);
    else if (cfg.hist_bins)
      c_hist.assign(cfg.hist_bins, 0);
  }
  window_counts.assign(cfg.windows.size(), 0);
}

double SweepStats::var_p() const {
  double m = mean_p();
  return double(sum_p2) / double(pairs) - m * m;
}

double SweepStats::var_c() const {
  double m = mean_c();
  return sum_c2 / double(pairs) - m * m;
}

namespace {
inline void kahan_add(double& sum, double& comp, double value) {
  double y = value - comp;
  double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}
}  // namespace

void SweepStats::add_c(double c) {
  kahan_add(sum_c, sum_c_comp, c);
  kahan_add(sum_c2, sum_c2_comp, c * c);
}

void SweepStats::merge(const SweepStats& o) {
  pairs += o.pairs;
  sum_p += o.sum_p;
  sum_p2 += o.sum_p2;
  kahan_add(sum_c, sum_c_comp, o.sum_c);
  kahan_add(sum_c, sum_c_comp, -o.sum_c_comp);
  kahan_add(sum_c2, sum_c2_comp, o.sum_c2);
  kahan_add(sum_c2, sum_c2_comp, -o.sum_c2_comp);
  auto add_vec = [](std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  };
  add_vec(p_hist, o.p_hist);
  add_vec(c_int_hist, o.c_int_hist);
  add_vec(c_hist, o.c_hist);
  add_vec(window_counts, o.window_counts);
}

namespace detail {

namespace {

// Exact integer chains; division count per pair is O(log v).
template <Algo A, bool HasTab>
inline void chain_scalar(uint32_t u, uint32_t v, const double* tab, uint32_t& p_out,
                         double& c_out) {
  uint32_t p = 0;
  double c = 0.0;
  while (true) {
    uint32_t m, neg = 0;
    uint32_t r;
    if constexpr (A == Algo::Standard) {
      m = v / u;
      r = v - m * u;
    } else if constexpr (A == Algo::Centered) {
      m = v / u;
      r = v - m * u;
      if (2 * r >= u) {  // round half-integer ratios up
        m += 1;
        r = u - r;
        neg = 1;
      }
    } else {
      uint32_t h = v / (2 * u);
      m = 2 * h + 1;
      int64_t s = int64_t(v) - int64_t(m) * u;
      neg = s < 0;
      r = uint32_t(neg ? -s : s);
    }
    ++p;
    if constexpr (HasTab) c += tab[2 * size_t(m) + neg];
    if (r == 0) break;
    v = u;
    u = r;
  }
  p_out = p;
  c_out = c;
}

template <Algo A, bool HasTab>
void sweep_chunk_scalar_impl(const KernelJob& job, const uint32_t* us,
                             const uint32_t* vs, size_t count, SweepStats& st) {
  for (size_t i = 0; i < count; ++i) {
    uint32_t p;
    double c;
    chain_scalar<A, HasTab>(us[i], vs[i], job.cost_tab, p, c);
    record_pair(job, p, c, st);
  }
}

}  // namespace

void sweep_chunk_scalar(const KernelJob& job, const uint32_t* us, const uint32_t* vs,
                        size_t count, SweepStats& st) {
  bool tab = job.cost_tab != nullptr;
  switch (job.algo) {
    case Algo::Standard:
      tab ? sweep_chunk_scalar_impl<Algo::Standard, true>(job, us, vs, count, st)
          : sweep_chunk_scalar_impl<Algo::Standard, false>(job, us, vs, count, st);
      break;
    case Algo::Centered:
      tab ? sweep_chunk_scalar_impl<Algo::Centered, true>(job, us, vs, count, st)
          : sweep_chunk_scalar_impl<Algo::Centered, false>(job, us, vs, count, st);
      break;
    case Algo::Odd:
      tab ? sweep_chunk_scalar_impl<Algo::Odd, true>(job, us, vs, count, st)
          : sweep_chunk_scalar_impl<Algo::Odd, false>(job, us, vs, count, st);
      break;
  }
}

}  // namespace detail

namespace {

using detail::KernelJob;

using ChunkFn = void (*)(const KernelJob&, const uint32_t*, const uint32_t*, size_t,
                         SweepStats&);

ChunkFn chunk_fn_for(SimdMode mode) {
#if defined(EUCLID_HAVE_AVX2)
  if (mode == SimdMode::Avx2) return detail::sweep_chunk_avx2;
#endif
  return detail::sweep_chunk_scalar;
}

std::vector<double> build_cost_table(const CostFunction& c, uint64_t n_max) {
  // Quotients reach n_max + 1 (odd rule on even ratios).
  std::vector<double> tab(2 * (n_max + 3), 0.0);
  for (uint64_t m = 1; m <= n_max + 1; ++m) {
    tab[2 * m] = c(m, +1);
    tab[2 * m + 1] = c(m, -1);
  }
  return tab;
}

struct Segment {
  uint64_t v_lo, v_hi;  // inclusive
  size_t shard;
};

void consume_range(const KernelJob& job, const Sieve& sieve, uint64_t v_lo,
                   uint64_t v_hi, ChunkFn fn, SweepStats& st) {
  constexpr size_t kChunk = 1 << 14;
  std::vector<uint32_t> us, vs;
  us.reserve(kChunk + 8);
  vs.reserve(kChunk + 8);
  std::vector<uint32_t> primes;
  std::vector<uint8_t> mask;
  const Algo algo = job.algo;
  for (uint64_t v = v_lo; v <= v_hi; ++v) {
    if (v == 1) {
      if (algo != Algo::Centered) { us.push_back(1); vs.push_back(1); }
      continue;
    }
    uint64_t u_max = (algo == Algo::Centered) ? v / 2 : v - 1;
    if (u_max == 0) continue;
    sieve.distinct_primes(uint32_t(v), primes);
    mask.assign(size_t(u_max) + 1, 0);
    for (uint32_t p : primes)
      for (uint64_t q = p; q <= u_max; q += p) mask[q] = 1;
    for (uint64_t u = 1; u <= u_max; ++u) {
      if (mask[u]) continue;
      us.push_back(uint32_t(u));
      vs.push_back(uint32_t(v));
      if (us.size() >= kChunk) {
        fn(job, us.data(), vs.data(), us.size(), st);
        us.clear();
        vs.clear();
      }
    }
  }
  if (!us.empty()) fn(job, us.data(), vs.data(), us.size(), st);
}

}  // namespace

std::vector<SweepResult> run_sweep(const SweepConfig& cfg, int shard_count,
                                   int thread_count, SimdMode mode) {
  if (cfg.n_max < 1) throw std::invalid_argument("run_sweep: N >= 1");
  if (cfg.n_max > (uint64_t(1) << 30))
    throw std::invalid_argument("run_sweep: N too large for exhaustive mode");
  std::vector<uint64_t> snaps = cfg.snapshots;
  if (snaps.empty()) snaps.push_back(cfg.n_max);
  std::sort(snaps.begin(), snaps.end());
  if (snaps.back() != cfg.n_max)
    throw std::invalid_argument("run_sweep: last snapshot must equal N");
  if (shard_count < 1) shard_count = 1;

  SimdMode resolved = resolve_simd_mode(mode);
  ChunkFn fn = chunk_fn_for(resolved);

  KernelJob job;
  job.algo = cfg.algo;
  job.windows = cfg.windows.data();
  job.n_windows = cfg.windows.size();
  std::vector<double> tab;
  bool unit = !cfg.cost || cfg.cost->kind() == CostFunction::Kind::Unit;
  job.unit_cost = unit;
  if (!unit) {
    tab = build_cost_table(*cfg.cost, cfg.n_max);
    job.cost_tab = tab.data();
    job.integer_cost = cfg.cost->integer_valued();
    job.inv_hist_width = cfg.hist_width > 0 ? 1.0 / cfg.hist_width : 0.0;
  }

  // Segment the denominator range at shard boundaries (equal-work square-root
  // spacing) and at snapshot cuts.
  std::vector<uint64_t> cuts;  // segment upper bounds, inclusive
  for (int k = 1; k <= shard_count; ++k) {
    uint64_t b = uint64_t(std::llround(double(cfg.n_max) * std::sqrt(double(k) / shard_count)));
    cuts.push_back(std::max<uint64_t>(1, std::min(b, cfg.n_max)));
  }
  for (uint64_t s : snaps) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segments;
  uint64_t lo = 1;
  for (uint64_t hi : cuts) {
    if (hi < lo) continue;
    segments.push_back({lo, hi, segments.size()});
    lo = hi + 1;
  }

  Sieve sieve{uint32_t(cfg.n_max)};
  std::vector<SweepStats> seg_stats(segments.size());
  for (auto& st : seg_stats) st.init(cfg);

  if (thread_count < 1)
    thread_count = int(std::max(1u, std::thread::hardware_concurrency()));
  thread_count = std::min<int>(thread_count, int(segments.size()));
  if (thread_count <= 1) {
    for (const Segment& seg : segments)
      consume_range(job, sieve, seg.v_lo, seg.v_hi, fn, seg_stats[seg.shard]);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= segments.size()) break;
        consume_range(job, sieve, segments[i].v_lo, segments[i].v_hi, fn,
                      seg_stats[segments[i].shard]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Prefix-merge segments in denominator order; emit at each snapshot.
  std::vector<SweepResult> out;
  SweepStats acc;
  acc.init(cfg);
  size_t next_snap = 0;
  for (size_t i = 0; i < segments.size() && next_snap < snaps.size(); ++i) {
    acc.merge(seg_stats[i]);
    if (segments[i].v_hi == snaps[next_snap]) {
      out.push_back({snaps[next_snap], acc});
      ++next_snap;
    }
  }
  if (out.size() != snaps.size())
    throw std::logic_error("run_sweep: snapshot assembly failed");
  return out;
}

}  // namespace euclid
