#include "euclid/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace euclid {

namespace {

constexpr uint64_t kExactCharFnLimit = 20000;

double log_n(uint64_t N) { return std::log(double(N)); }

// Monte-Carlo runs are split into fixed-size blocks with substream seeds
// derived from (seed, block); results merge in block order, so reports are
// reproducible regardless of the thread count.
constexpr uint64_t kMcBlock = 1 << 16;

double chain_cost(const CostFunction& c, Algo algo, uint64_t u, uint64_t v,
                  uint32_t& p_out) {
  double total = 0.0;
  uint32_t p = 0;
  uint64_t big = v, small = u;
  while (true) {
    DivStep st = divide(big, small, algo);
    total += c(st.digit);
    ++p;
    if (st.r == 0) break;
    big = small;
    small = st.r;
  }
  p_out = p;
  return total;
}

}  // namespace

uint64_t Histogram::total() const {
  uint64_t t = 0;
  for (uint64_t c : counts) t += c;
  return t;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_vs_normal(const std::vector<std::pair<double, uint64_t>>& atoms,
                    double shift, double scale) {
  uint64_t total = 0;
  for (auto& [v, c] : atoms) total += c;
  if (total == 0) throw std::invalid_argument("ks_vs_normal: empty sample");
  double ks = 0.0;
  uint64_t cum = 0;
  for (auto& [v, c] : atoms) {
    double z = (v - shift) / scale;
    double phi = normal_cdf(z);
    double f_before = double(cum) / double(total);
    cum += c;
    double f_after = double(cum) / double(total);
    ks = std::max(ks, std::fabs(f_after - phi));
    ks = std::max(ks, std::fabs(f_before - phi));
  }
  return ks;
}

ExhaustiveRun ExhaustiveRun::compute(Algo algo, const CostFunction& cost,
                                     std::vector<uint64_t> snapshots,
                                     std::vector<CostWindow> windows, int shards,
                                     int threads, SimdMode mode) {
  if (snapshots.empty()) throw std::invalid_argument("ExhaustiveRun: no snapshots");
  std::sort(snapshots.begin(), snapshots.end());
  snapshots.erase(std::unique(snapshots.begin(), snapshots.end()), snapshots.end());

  ExhaustiveRun run;
  run.algo_ = algo;
  run.cost_ = &cost;
  run.cost_name_ = cost.name();
  run.integer_cost_ = cost.integer_valued();
  run.snapshots_ = snapshots;

  SweepConfig cfg;
  cfg.algo = algo;
  cfg.n_max = snapshots.back();
  cfg.snapshots = snapshots;
  cfg.cost = &cost;
  cfg.windows = std::move(windows);
  if (!cost.integer_valued()) {
    // Cost of one pair is at most ~ln(v) + O(1) per digit family; size the
    // fine histogram off the worst digit cost at m = N + 1.
    double cmax = 0.0;
    for (int sign : {+1, -1}) cmax = std::max(cmax, cost(cfg.n_max + 1, sign));
    double reach = std::max(4.0, 2.5 * cmax + 8.0);
    cfg.hist_width = 1e-5;
    cfg.hist_bins = uint32_t(reach / cfg.hist_width) + 2;
  } else {
    double cmax = 0.0;
    for (int sign : {+1, -1}) cmax = std::max(cmax, cost(cfg.n_max + 1, sign));
    cfg.int_hist_bins = uint32_t(cmax * 160.0) + 160;
  }
  run.hist_width_ = cfg.hist_width;
  run.results_ = run_sweep(cfg, shards, threads, mode);
  return run;
}

const SweepStats& ExhaustiveRun::at(uint64_t N) const {
  for (auto& r : results_)
    if (r.N == N) return r.stats;
  throw std::out_of_range("ExhaustiveRun: no snapshot at requested N");
}

CostSummary ExhaustiveRun::summary(uint64_t N) const {
  const SweepStats& st = at(N);
  CostSummary s;
  s.N = N;
  s.algo = algo_;
  s.cost_name = cost_name_;
  s.count = st.pairs;
  s.mode = "exhaustive";
  bool unit = cost_->kind() == CostFunction::Kind::Unit;
  if (unit || integer_cost_) {
    if (unit) {
      s.mean = st.mean_p();
      s.variance = st.var_p();
      s.hist.width = 1.0;
      s.hist.counts.assign(st.p_hist.begin(), st.p_hist.end());
    } else {
      s.mean = st.mean_c();
      s.variance = st.var_c();
      s.hist.width = 1.0;
      s.hist.counts.assign(st.c_int_hist.begin(), st.c_int_hist.end());
    }
  } else {
    s.mean = st.mean_c();
    s.variance = st.var_c();
    s.hist.width = hist_width_;
    s.hist.counts.assign(st.c_hist.begin(), st.c_hist.end());
  }
  while (!s.hist.counts.empty() && s.hist.counts.back() == 0) s.hist.counts.pop_back();
  return s;
}

std::complex<double> ExhaustiveRun::char_fn(uint64_t N, double tau,
                                            double* bin_error) const {
  const SweepStats& st = at(N);
  bool unit = cost_->kind() == CostFunction::Kind::Unit;
  const std::vector<uint64_t>& hist =
      unit ? st.p_hist : (integer_cost_ ? st.c_int_hist : st.c_hist);
  double width = (unit || integer_cost_) ? 1.0 : hist_width_;
  std::complex<double> acc{0.0, 0.0};
  for (size_t k = 0; k < hist.size(); ++k) {
    if (!hist[k]) continue;
    double value = (unit || integer_cost_) ? double(k) : (double(k) + 0.5) * width;
    acc += double(hist[k]) * std::polar(1.0, tau * value);
  }
  if (bin_error)
    *bin_error = (unit || integer_cost_) ? 0.0 : std::fabs(tau) * width * 0.5;
  return acc / double(st.pairs);
}

double ExhaustiveRun::ks_distance(uint64_t N, double mu, double delta) const {
  if (delta <= 0.0) throw std::invalid_argument("ks_distance: delta > 0 required");
  const SweepStats& st = at(N);
  bool unit = cost_->kind() == CostFunction::Kind::Unit;
  const std::vector<uint64_t>& hist =
      unit ? st.p_hist : (integer_cost_ ? st.c_int_hist : st.c_hist);
  double width = (unit || integer_cost_) ? 1.0 : hist_width_;
  std::vector<std::pair<double, uint64_t>> atoms;
  atoms.reserve(hist.size());
  for (size_t k = 0; k < hist.size(); ++k) {
    if (!hist[k]) continue;
    // real-valued costs: bin upper edge; atom placement error <= width
    double value = (unit || integer_cost_) ? double(k) : double(k + 1) * width;
    atoms.emplace_back(value, hist[k]);
  }
  double ln = log_n(N);
  return ks_vs_normal(atoms, mu * ln, delta * std::sqrt(ln));
}

double ExhaustiveRun::window_probability(uint64_t N, size_t window_index) const {
  const SweepStats& st = at(N);
  if (window_index >= st.window_counts.size())
    throw std::out_of_range("window_probability");
  return double(st.window_counts[window_index]) / double(st.pairs);
}

namespace {

struct McResult {
  SweepStats stats;
  std::complex<double> char_sum{0.0, 0.0};
  uint64_t char_count = 0;
};

// Shared Monte-Carlo driver: draws pairs (plain or smoothed model),
// evaluates the chain, feeds the same per-pair bookkeeping as the
// exhaustive kernels plus an optional characteristic-function sum.
McResult mc_run(Algo algo, const CostFunction& cost, uint64_t N, uint64_t samples,
                uint64_t seed, const std::vector<CostWindow>& windows,
                std::optional<double> tau, std::optional<double> alpha0,
                int threads) {
  SweepConfig cfg;
  cfg.algo = algo;
  cfg.n_max = N;
  cfg.snapshots = {N};
  cfg.cost = &cost;
  cfg.windows = windows;
  detail::KernelJob job;
  job.algo = algo;
  job.windows = cfg.windows.data();
  job.n_windows = cfg.windows.size();
  job.unit_cost = false;  // always track C in MC mode
  job.integer_cost = cost.integer_valued();
  job.inv_hist_width = 0.0;

  uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<McResult> partial(blocks);

  auto run_block = [&](uint64_t b) {
    McResult& res = partial[b];
    res.stats.init(cfg);
    if (job.integer_cost) res.stats.c_int_hist.assign(4096, 0);
    Rng rng(seed, b);
    uint64_t n_here = std::min(kMcBlock, samples - b * kMcBlock);
    SampleSpace plain = SampleSpace::exhaustive(N, algo);
    SmoothedModel model{N, algo, alpha0.value_or(0.25), seed};
    for (uint64_t i = 0; i < n_here; ++i) {
      auto [u, v] = alpha0 ? sample_smoothed(model, rng) : sample_uniform(plain, rng);
      uint32_t p = 0;
      double cval = chain_cost(cost, algo, u, v, p);
      detail::record_pair(job, p, cval, res.stats);
      if (tau) {
        res.char_sum += std::polar(1.0, *tau * cval);
        res.char_count += 1;
      }
    }
  };

  if (threads < 1) threads = int(std::max(1u, std::thread::hardware_concurrency()));
  threads = int(std::min<uint64_t>(threads, blocks));
  if (threads <= 1) {
    for (uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
      while (true) {
        uint64_t b = next.fetch_add(1);
        if (b >= blocks) break;
        run_block(b);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  McResult out;
  out.stats.init(cfg);
  if (job.integer_cost) out.stats.c_int_hist.assign(4096, 0);
  for (uint64_t b = 0; b < blocks; ++b) {
    out.stats.merge(partial[b].stats);
    out.char_sum += partial[b].char_sum;
    out.char_count += partial[b].char_count;
  }
  return out;
}

}  // namespace

CostSummary summarize(const SampleSpace& space, const CostFunction& c) {
  if (space.N == 0) throw std::invalid_argument("summarize: empty space (N = 0)");
  if (space.mode == SampleSpace::Mode::Exhaustive) {
    ExhaustiveRun run = ExhaustiveRun::compute(space.algo, c, {space.N});
    return run.summary(space.N);
  }
  McResult mc = mc_run(space.algo, c, space.N, space.sample_count, space.seed, {},
                       std::nullopt, std::nullopt, 0);
  CostSummary s;
  s.N = space.N;
  s.algo = space.algo;
  s.cost_name = c.name();
  s.count = mc.stats.pairs;
  s.mean = mc.stats.mean_c();
  s.variance = mc.stats.var_c();
  s.mode = "mc";
  s.samples = space.sample_count;
  s.seed = space.seed;
  if (c.integer_valued()) {
    s.hist.width = 1.0;
    s.hist.counts.assign(mc.stats.c_int_hist.begin(), mc.stats.c_int_hist.end());
    while (!s.hist.counts.empty() && s.hist.counts.back() == 0) s.hist.counts.pop_back();
  }
  return s;
}

CostSummary summarize(const SmoothedModel& model, uint64_t samples,
                      const CostFunction& c) {
  McResult mc = mc_run(model.algo, c, model.N, samples, model.seed, {},
                       std::nullopt, model.alpha0, 0);
  CostSummary s;
  s.N = model.N;
  s.algo = model.algo;
  s.cost_name = c.name();
  s.count = mc.stats.pairs;
  s.mean = mc.stats.mean_c();
  s.variance = mc.stats.var_c();
  s.mode = "smoothed";
  s.samples = samples;
  s.seed = model.seed;
  return s;
}

std::complex<double> empirical_char_fn(const SampleSpace& space, const CostFunction& c,
                                       double tau) {
  if (space.mode == SampleSpace::Mode::MonteCarlo) {
    McResult mc = mc_run(space.algo, c, space.N, space.sample_count, space.seed, {},
                         tau, std::nullopt, 0);
    return mc.char_sum / double(mc.char_count);
  }
  if (c.integer_valued()) {
    ExhaustiveRun run = ExhaustiveRun::compute(space.algo, c, {space.N});
    return run.char_fn(space.N, tau);
  }
  if (space.N <= kExactCharFnLimit) {
    std::complex<double> acc{0.0, 0.0};
    uint64_t count = 0;
    enumerate_pairs(space, [&](uint64_t u, uint64_t v) {
      uint32_t p = 0;
      double cval = chain_cost(c, space.algo, u, v, p);
      acc += std::polar(1.0, tau * cval);
      ++count;
    });
    return acc / double(count);
  }
  ExhaustiveRun run = ExhaustiveRun::compute(space.algo, c, {space.N});
  return run.char_fn(space.N, tau);
}

std::complex<double> empirical_char_fn(const SmoothedModel& model, uint64_t samples,
                                       const CostFunction& c, double tau) {
  McResult mc = mc_run(model.algo, c, model.N, samples, model.seed, {}, tau,
                       model.alpha0, 0);
  return mc.char_sum / double(mc.char_count);
}

std::vector<CltRow> clt_table(const std::vector<uint64_t>& Ns, const CostFunction& c,
                              Algo algo, double mu, double delta, int threads) {
  if (delta <= 0.0) throw std::invalid_argument("clt_table: delta > 0 required");
  ExhaustiveRun run =
      ExhaustiveRun::compute(algo, c, Ns, {}, 16, threads, SimdMode::Auto);
  std::vector<CltRow> rows;
  for (uint64_t N : run.snapshots()) rows.push_back({N, run.ks_distance(N, mu, delta)});
  return rows;
}

LltReport llt_exhaustive(const ExhaustiveRun& run, uint64_t N, double x, double j_lo,
                         double j_hi, [[maybe_unused]] double mu, double delta,
                         size_t window_index) {
  if (delta <= 0.0) throw std::invalid_argument("llt: delta > 0 required");
  LltReport rep;
  rep.N = N;
  rep.x = x;
  rep.j_lo = j_lo;
  rep.j_hi = j_hi;
  double ln = log_n(N);
  double p_hat = (j_hi > j_lo) ? run.window_probability(N, window_index) : 0.0;
  rep.lhs = std::sqrt(ln) * p_hat;
  rep.rhs = (j_hi - j_lo) * std::exp(-0.5 * x * x) / (delta * std::sqrt(2.0 * M_PI));
  rep.abs_err = std::fabs(rep.lhs - rep.rhs);
  rep.rel_err = rep.rhs > 0.0 ? rep.abs_err / rep.rhs : 0.0;
  rep.ci_halfwidth = 0.0;
  return rep;
}

LltReport llt_estimate(uint64_t N, double x, double j_lo, double j_hi,
                       const CostFunction& c, Algo algo, double mu, double delta,
                       const SampleSpace& space) {
  if (delta <= 0.0) throw std::invalid_argument("llt: delta > 0 required");
  double ln = log_n(N);
  double center = mu * ln + delta * x * std::sqrt(ln);
  std::vector<CostWindow> windows{{center + j_lo, center + j_hi}};
  if (j_hi <= j_lo) windows.clear();

  LltReport rep;
  rep.N = N;
  rep.x = x;
  rep.j_lo = j_lo;
  rep.j_hi = j_hi;
  rep.rhs = std::max(0.0, j_hi - j_lo) * std::exp(-0.5 * x * x) /
            (delta * std::sqrt(2.0 * M_PI));

  double p_hat = 0.0;
  if (space.mode == SampleSpace::Mode::Exhaustive) {
    if (!windows.empty()) {
      ExhaustiveRun run = ExhaustiveRun::compute(algo, c, {N}, windows);
      p_hat = run.window_probability(N, 0);
    }
    rep.ci_halfwidth = 0.0;
  } else {
    uint64_t M = space.sample_count;
    if (!windows.empty()) {
      McResult mc = mc_run(algo, c, N, M, space.seed, windows, std::nullopt,
                           std::nullopt, 0);
      p_hat = double(mc.stats.window_counts[0]) / double(mc.stats.pairs);
    }
    rep.ci_halfwidth =
        std::sqrt(ln) * 1.96 * std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / double(M));
  }
  rep.lhs = std::sqrt(ln) * p_hat;
  rep.abs_err = std::fabs(rep.lhs - rep.rhs);
  rep.rel_err = rep.rhs > 0.0 ? rep.abs_err / rep.rhs : 0.0;
  return rep;
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0, residual = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = double(n) * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("least_squares: degenerate grid");
  LineFit f;
  f.slope = (double(n) * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / double(n);
  double ss_res = 0, ss_tot = 0, ybar = sy / double(n);
  for (size_t i = 0; i < n; ++i) {
    double e = ys[i] - (f.slope * xs[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  f.residual = std::sqrt(ss_res / double(n));
  return f;
}

}  // namespace

DecayFit charfn_decay(double tau, const ExhaustiveRun& run) {
  const CostFunction& c = run.cost();
  DecayFit fit;
  fit.tau = tau;
  if (tau == 0.0) {
    fit.tau_zero_warning = true;
    fit.Ns = run.snapshots();
    fit.moduli.assign(fit.Ns.size(), 1.0);
    fit.gamma_hat = 0.0;
    return fit;
  }
  if (c.lattice()) {
    double limit = M_PI / c.lattice()->width;
    if (std::fabs(tau) > limit + 1e-12)
      throw std::invalid_argument(
          "charfn_decay: |tau| exceeds pi/L_c = " + std::to_string(limit) +
          " for the lattice cost '" + c.name() + "'; the decay bound only applies "
          "inside the lattice range");
  }
  std::vector<double> lx, ly;
  for (uint64_t N : run.snapshots()) {
    double be = 0.0;
    double mod = std::abs(run.char_fn(N, tau, &be));
    fit.Ns.push_back(N);
    fit.moduli.push_back(mod);
    fit.bin_error = std::max(fit.bin_error, be);
    lx.push_back(std::log(double(N)));
    ly.push_back(std::log(std::max(mod, 1e-300)));
  }
  LineFit lf = least_squares(lx, ly);
  fit.gamma_hat = -lf.slope;
  fit.fit_residual = lf.residual;
  return fit;
}

DecayFit charfn_decay(double tau, const std::vector<uint64_t>& Ns,
                      const CostFunction& c, Algo algo, int threads) {
  ExhaustiveRun run = ExhaustiveRun::compute(algo, c, Ns, {}, 16, threads);
  return charfn_decay(tau, run);
}

GrowthFit growth_regression(const std::vector<CostSummary>& summaries) {
  if (summaries.size() < 3)
    throw std::invalid_argument("growth_regression: need at least 3 summaries");
  std::vector<double> lx, means, vars;
  for (const CostSummary& s : summaries) {
    lx.push_back(std::log(double(s.N)));
    means.push_back(s.mean);
    vars.push_back(s.variance);
  }
  for (size_t i = 1; i < lx.size(); ++i)
    if (lx[i] == lx[i - 1])
      throw std::invalid_argument("growth_regression: degenerate N grid");
  LineFit fm = least_squares(lx, means);
  LineFit fv = least_squares(lx, vars);
  GrowthFit g;
  g.mu_hat = fm.slope;
  g.mean_intercept = fm.intercept;
  g.mean_r2 = fm.r2;
  g.delta2_hat = fv.slope;
  g.var_intercept = fv.intercept;
  g.var_r2 = fv.r2;
  return g;
}

}  // namespace euclid
