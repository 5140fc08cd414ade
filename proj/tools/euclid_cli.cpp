// Command-line front end: expansions, sweep statistics, spectral constants,
// Dirichlet sums and the verification runs, all emitting JSON/CSV reports.
//
// Exit codes: 0 success, 1 verification-tolerance failure or I/O error,
// 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "euclid/dirichlet.hpp"
#include "euclid/report.hpp"
#include "euclid/spectral.hpp"
#include "euclid/stats.hpp"

namespace fs = std::filesystem;
using namespace euclid;

namespace {

struct CommonOpts {
  std::string algo = "g";
  std::string cost = "unit";
  std::string out_dir = ".";
  std::string simd = "auto";
  int threads = 0;
  uint64_t seed = 12345;

  Algo parsed_algo() const { return algo_from_string(algo); }
  SimdMode parsed_simd() const { return simd_mode_from_string(simd); }
};

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("EUCLID_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return int(std::max(1u, std::thread::hardware_concurrency()));
}

CostFunction parse_cost(const std::string& spec) {
  if (spec == "unit") return CostFunction::unit();
  if (spec == "logq") return CostFunction::log_quotient();
  if (spec == "binlen") return CostFunction::binary_length();
  if (spec.rfind("ind:", 0) == 0) {
    std::string body = spec.substr(4);
    int sign = +1;
    if (!body.empty() && (body.back() == '-' || body.back() == '+')) {
      sign = body.back() == '-' ? -1 : +1;
      body.pop_back();
    }
    return CostFunction::indicator({std::stoull(body), sign});
  }
  if (spec.rfind("@", 0) == 0) return CostFunction::from_file(spec.substr(1));
  throw CLI::ValidationError(
      "--cost expects unit|logq|binlen|ind:<m>[+-]|@<table-file>, got '" + spec + "'");
}

uint64_t to_count(double x, const char* what) {
  if (!(x >= 1.0) || x > 9e15)
    throw CLI::ValidationError(std::string(what) + " out of range");
  return uint64_t(std::llround(x));
}

std::vector<uint64_t> parse_grid(const std::string& grid) {
  std::vector<uint64_t> out;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(to_count(std::stod(item), "grid entry"));
  if (out.empty()) throw CLI::ValidationError("empty N grid");
  std::sort(out.begin(), out.end());
  return out;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool with_cost = true) {
  cmd->add_option("--algo", c.algo, "algorithm: g (standard), k (centered), o (odd)")
      ->check(CLI::IsMember({"g", "k", "o", "standard", "centered", "odd"}));
  if (with_cost)
    cmd->add_option("--cost", c.cost,
                    "cost: unit|logq|binlen|ind:<m>[+-]|@<table-file>");
  cmd->add_option("--out", c.out_dir, "output directory for reports");
  cmd->add_option("--threads", c.threads, "worker threads (0 = auto/EUCLID_THREADS)");
  cmd->add_option("--seed", c.seed, "random seed for Monte-Carlo modes");
  cmd->add_option("--simd", c.simd, "sweep kernel: auto|scalar|avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

fs::path prepare_out(const CommonOpts& c) {
  fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::exists(dir))
    throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

Json echo_config(const CLI::App* cmd, const CommonOpts& c) {
  Json j = Json::object();
  j["command"] = cmd->get_name();
  for (const CLI::Option* opt : cmd->get_options()) {
    if (opt->get_lnames().empty()) continue;
    std::string name = opt->get_lnames()[0];
    if (name == "help" || name == "config") continue;
    if (opt->count())
      j[name] = opt->results()[0];
    else if (!opt->get_default_str().empty())
      j[name] = opt->get_default_str();
  }
  j["resolved_threads"] = resolve_threads(c.threads);
  j["resolved_simd"] = simd_mode_name(resolve_simd_mode(c.parsed_simd()));
  return j;
}

// ---------------------------------------------------------------- expand --

int cmd_expand(const CommonOpts& c, uint64_t u, uint64_t v, const std::string& json_out) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  Expansion e = expand(u, v, a);
  Fraction f = reconstruct(e);
  std::cout << "algo " << algo_name(a) << "  pair " << u << "/" << v << "\n";
  for (size_t i = 0; i < e.digits.size(); ++i)
    std::cout << "  digit " << (i + 1) << ": (" << e.digits[i].m << ", "
              << (e.digits[i].sign > 0 ? "+1" : "-1") << ")  r=" << e.remainders[i]
              << "\n";
  std::cout << "depth P = " << e.depth() << "\n"
            << "reconstruct = " << f.num << "/" << f.den << "\n"
            << "total cost (" << cost.name() << ") = " << format15(cost.total(e))
            << "\n";
  if (!json_out.empty()) {
    Json j;
    j["algo"] = std::string(1, algo_tag(a));
    j["u"] = u;
    j["v"] = v;
    Json digits = Json::array();
    for (const Digit& d : e.digits) digits.push_back({{"m", d.m}, {"sign", d.sign}});
    j["digits"] = digits;
    j["depth"] = e.depth();
    j["cost_name"] = cost.name();
    j["total_cost"] = j15(cost.total(e));
    write_json_file(json_out, j);
  }
  return 0;
}

// ----------------------------------------------------------------- stats --

int cmd_stats(const CLI::App* cmd, const CommonOpts& c, const std::string& grid,
              const std::string& mode, double samples) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  std::vector<uint64_t> Ns = parse_grid(grid);
  fs::path dir = prepare_out(c);
  int threads = resolve_threads(c.threads);

  std::vector<CostSummary> rows;
  if (mode == "exhaustive") {
    ExhaustiveRun run = ExhaustiveRun::compute(a, cost, Ns, {}, 16, threads,
                                               c.parsed_simd());
    for (uint64_t N : run.snapshots()) rows.push_back(run.summary(N));
  } else {
    for (uint64_t N : Ns) {
      SampleSpace sp = SampleSpace::monte_carlo(N, a, to_count(samples, "--samples"),
                                                c.seed);
      rows.push_back(summarize(sp, cost));
    }
  }

  std::ostringstream csv;
  csv << "N,count,mean,variance,mode,samples,seed\n";
  for (const CostSummary& s : rows)
    csv << s.N << "," << s.count << "," << format15(s.mean) << ","
        << format15(s.variance) << "," << s.mode << "," << s.samples << "," << s.seed
        << "\n";
  write_text_file((dir / "stats.csv").string(), csv.str());

  for (const CostSummary& s : rows) {
    std::ostringstream h;
    h << "bin_lo,bin_hi,count\n";
    for (size_t k = 0; k < s.hist.counts.size(); ++k) {
      if (!s.hist.counts[k]) continue;
      h << format15(s.hist.origin + double(k) * s.hist.width) << ","
        << format15(s.hist.origin + double(k + 1) * s.hist.width) << ","
        << s.hist.counts[k] << "\n";
    }
    write_text_file((dir / ("hist_" + std::to_string(s.N) + ".csv")).string(), h.str());
  }

  Json j;
  j["config"] = echo_config(cmd, c);
  Json jr = Json::array();
  for (const CostSummary& s : rows)
    jr.push_back({{"N", s.N},
                  {"count", s.count},
                  {"mean", j15(s.mean)},
                  {"variance", j15(s.variance)},
                  {"mode", s.mode},
                  {"samples", s.samples},
                  {"seed", s.seed}});
  j["rows"] = jr;
  write_json_file((dir / "stats.json").string(), j);
  std::cout << "count " << rows.back().count << "\n"
            << "mean " << format15(rows.back().mean) << "  variance "
            << format15(rows.back().variance) << "\n";
  return 0;
}

// ------------------------------------------------------ spectral/moments --

Json spectral_json(const SpectralModel& m) {
  Json j;
  j["kind"] = std::string(1, algo_tag(m.algo));
  j["cost"] = m.cost_name;
  j["grid_order"] = m.grid_order;
  j["M"] = m.M;
  j["lambda"] = j15(m.lambda_one);
  j["pressure"] = j15(m.pressure.pressure_at_1);
  j["sigma_prime"] = j15(m.moments.sigma_prime);
  j["sigma_second"] = j15(m.moments.sigma_second);
  j["mu"] = j15(m.moments.mu);
  j["delta2"] = j15(m.moments.delta2);
  j["tail_bound"] = j15(m.tail_bound);
  return j;
}

int cmd_spectral(const CLI::App* cmd, const CommonOpts& c, int grid_order, double M,
                 const std::string& file) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  SpectralModel model =
      compute_spectral_model(cost, a, grid_order, to_count(M, "--M"));
  fs::path dir = prepare_out(c);
  Json j = spectral_json(model);
  j["lambda_prime"] = j15(model.pressure.d_sigma);
  j["pressure_dd_s"] = j15(model.pressure.d2_sigma);
  j["pressure_dd_w"] = j15(model.pressure.d2_w);
  j["r_sub"] = j15(model.r_sub);
  j["gap_ratio"] = j15(model.gap_ratio);
  j["config"] = echo_config(cmd, c);
  write_json_file((dir / file).string(), j);
  std::cout << "lambda(1,0) = " << format15(model.lambda_one) << "\n"
            << "mu = " << format15(model.moments.mu)
            << "  delta2 = " << format15(model.moments.delta2) << "\n";
  return 0;
}

// -------------------------------------------------------------- dirichlet --

int cmd_dirichlet(const CLI::App* cmd, const CommonOpts& c, double tau, double nmax) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  uint64_t N = to_count(nmax, "--nmax");
  DirichletData data = coefficients(N, tau, cost, a);
  PartialSums ps = partial_sums(data);
  fs::path dir = prepare_out(c);
  std::ostringstream csv;
  csv << "n,re_cn,im_cn\n";
  for (uint64_t n = 1; n <= N; ++n)
    csv << n << "," << format15(data.c[n].real()) << "," << format15(data.c[n].imag())
        << "\n";
  write_text_file((dir / "dirichlet.csv").string(), csv.str());
  Json j;
  j["config"] = echo_config(cmd, c);
  j["n_max"] = N;
  j["tau"] = j15(tau);
  j["phi_at_nmax"] = j15(ps.phi[N]);
  j["psi_at_nmax"] = j15(ps.psi[N]);
  write_json_file((dir / "dirichlet.json").string(), j);
  std::cout << "Phi(" << N << ") = " << format15(ps.phi[N].real()) << " + "
            << format15(ps.phi[N].imag()) << "i\n";
  return 0;
}

// ----------------------------------------------------------------- verify --

int finish_verify(const fs::path& dir, const std::string& name, Json& j, bool pass) {
  j["pass"] = pass;
  write_json_file((dir / name).string(), j);
  std::cout << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

MomentConstants spectral_mu_delta(const CommonOpts& c, double mu_flag,
                                  double delta_flag) {
  if (mu_flag > 0.0 && delta_flag > 0.0) {
    MomentConstants mc;
    mc.mu = mu_flag;
    mc.delta2 = delta_flag * delta_flag;
    return mc;
  }
  SpectralContext ctx(parse_cost(c.cost), c.parsed_algo());
  return moment_constants(ctx);
}

int cmd_verify_clt(const CLI::App* cmd, const CommonOpts& c, const std::string& grid,
                   double mu_flag, double delta_flag, double ks_max) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  std::vector<uint64_t> Ns = parse_grid(grid);
  MomentConstants mc = spectral_mu_delta(c, mu_flag, delta_flag);
  double delta = std::sqrt(mc.delta2);
  std::vector<CltRow> rows = clt_table(Ns, cost, a, mc.mu, delta,
                                       resolve_threads(c.threads));
  bool decreasing = true;
  for (size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].ks < rows[i - 1].ks)) decreasing = false;
  bool pass = decreasing && rows.back().ks <= ks_max;
  Json j;
  j["config"] = echo_config(cmd, c);
  j["mu"] = j15(mc.mu);
  j["delta"] = j15(delta);
  Json jr = Json::array();
  for (const CltRow& r : rows) jr.push_back({{"N", r.N}, {"ks", j15(r.ks)}});
  j["rows"] = jr;
  j["decreasing"] = decreasing;
  j["ks_at_max_N"] = j15(rows.back().ks);
  j["ks_tolerance"] = j15(ks_max);
  return finish_verify(prepare_out(c), "verify_clt.json", j, pass);
}

int cmd_verify_llt(const CLI::App* cmd, const CommonOpts& c, double Nf,
                   const std::string& mode, double samples, double x,
                   const std::string& J, double mu_flag, double delta_flag,
                   double rel_max) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  uint64_t N = to_count(Nf, "--N");
  auto comma = J.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--J expects 'lo,hi'");
  double j_lo = std::stod(J.substr(0, comma)), j_hi = std::stod(J.substr(comma + 1));
  MomentConstants mc = spectral_mu_delta(c, mu_flag, delta_flag);
  double delta = std::sqrt(mc.delta2);
  SampleSpace space = (mode == "exhaustive")
                          ? SampleSpace::exhaustive(N, a)
                          : SampleSpace::monte_carlo(
                                N, a, to_count(samples, "--samples"), c.seed);
  LltReport rep = llt_estimate(N, x, j_lo, j_hi, cost, a, mc.mu, delta, space);
  bool pass = rep.rel_err <= rel_max;
  Json j;
  j["config"] = echo_config(cmd, c);
  j["N"] = rep.N;
  j["x"] = j15(rep.x);
  j["J"] = Json::array({j15(rep.j_lo), j15(rep.j_hi)});
  j["lhs"] = j15(rep.lhs);
  j["rhs"] = j15(rep.rhs);
  j["abs_err"] = j15(rep.abs_err);
  j["rel_err"] = j15(rep.rel_err);
  j["ci_halfwidth"] = j15(rep.ci_halfwidth);
  j["mu"] = j15(mc.mu);
  j["delta"] = j15(delta);
  j["rel_tolerance"] = j15(rel_max);
  return finish_verify(prepare_out(c), "verify_llt.json", j, pass);
}

int cmd_verify_quasipower(const CLI::App* cmd, const CommonOpts& c, double tau,
                          double Nf, double rel_max) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  uint64_t N = to_count(Nf, "--N");
  SpectralContext ctx(cost, a);
  QuasiPower qp = quasi_power_predict(ctx, N, tau);
  ExhaustiveRun run = ExhaustiveRun::compute(a, cost, {N}, {}, 16,
                                             resolve_threads(c.threads),
                                             c.parsed_simd());
  std::complex<double> emp = run.char_fn(N, tau);
  double rel = std::abs(qp.prediction - emp) / std::abs(emp);
  bool pass = rel <= rel_max;
  Json j;
  j["config"] = echo_config(cmd, c);
  j["tau"] = j15(tau);
  j["N"] = N;
  j["sigma_itau"] = j15(qp.sigma_itau);
  j["prediction"] = j15(qp.prediction);
  j["empirical"] = j15(emp);
  j["rel_err"] = j15(rel);
  j["rel_tolerance"] = j15(rel_max);
  return finish_verify(prepare_out(c), "verify_quasipower.json", j, pass);
}

int cmd_verify_decay(const CLI::App* cmd, const CommonOpts& c, double tau,
                     const std::string& grid) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  DecayFit fit = charfn_decay(tau, parse_grid(grid), cost, a,
                              resolve_threads(c.threads));
  bool pass = fit.tau_zero_warning ? false : fit.gamma_hat > 0.0;
  Json j;
  j["config"] = echo_config(cmd, c);
  j["tau"] = j15(tau);
  Json jr = Json::array();
  for (size_t i = 0; i < fit.Ns.size(); ++i)
    jr.push_back({{"N", fit.Ns[i]}, {"modulus", j15(fit.moduli[i])}});
  j["rows"] = jr;
  j["gamma_hat"] = j15(fit.gamma_hat);
  j["fit_residual"] = j15(fit.fit_residual);
  j["bin_error"] = j15(fit.bin_error);
  j["tau_zero_warning"] = fit.tau_zero_warning;
  return finish_verify(prepare_out(c), "verify_decay.json", j, pass);
}

int cmd_verify_identity(const CLI::App* cmd, const CommonOpts& c, double s, double tau,
                        double nmax, int neumann, double tol) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  IdentityReport rep =
      identity_check(s, tau, cost, a, to_count(nmax, "--nmax"), neumann);
  double allowance = std::max(tol, rep.lhs_tail + rep.rhs_tail + rep.slack);
  bool pass = rep.diff <= allowance;
  Json j;
  j["config"] = echo_config(cmd, c);
  j["s"] = j15(rep.s);
  j["tau"] = j15(rep.tau);
  j["lhs"] = j15(rep.lhs);
  j["rhs"] = j15(rep.rhs);
  j["diff"] = j15(rep.diff);
  j["lhs_tail"] = j15(rep.lhs_tail);
  j["rhs_tail"] = j15(rep.rhs_tail);
  j["slack"] = j15(rep.slack);
  j["excluded_term"] = j15(rep.excluded_term);
  j["neumann_terms"] = rep.neumann_terms;
  j["allowance"] = j15(allowance);
  return finish_verify(prepare_out(c), "verify_identity.json", j, pass);
}

int cmd_verify_model_distance(const CLI::App* cmd, const CommonOpts& c, double Nf,
                              double alpha0, double factor) {
  Algo a = c.parsed_algo();
  CostFunction cost = parse_cost(c.cost);
  uint64_t N = to_count(Nf, "--N");
  double dist = model_distance(N, alpha0, a, cost);
  double bound = factor * std::pow(double(N), -alpha0);
  bool pass = dist <= bound;
  Json j;
  j["config"] = echo_config(cmd, c);
  j["N"] = N;
  j["alpha0"] = j15(alpha0);
  j["distance"] = j15(dist);
  j["bound"] = j15(bound);
  return finish_verify(prepare_out(c), "verify_model_distance.json", j, pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euclidean division statistics and transfer-operator numerics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file (flags override)");
  app.allow_config_extras(false);

  // expand
  CommonOpts c_expand;
  uint64_t opt_u = 0, opt_v = 0;
  std::string expand_json;
  CLI::App* sc_expand = app.add_subcommand("expand", "digit word of one pair");
  add_common(sc_expand, c_expand);
  sc_expand->add_option("--u", opt_u, "numerator")->required();
  sc_expand->add_option("--v", opt_v, "denominator")->required();
  sc_expand->add_option("--json", expand_json, "also write a JSON report here");

  // stats
  CommonOpts c_stats;
  std::string stats_grid = "1000";
  std::string stats_mode = "exhaustive";
  double stats_samples = 1e6;
  CLI::App* sc_stats = app.add_subcommand("stats", "cost summaries over the pair space");
  add_common(sc_stats, c_stats);
  sc_stats->add_option("--N", stats_grid, "bound N (or comma list of N values)");
  sc_stats->add_option("--N-grid", stats_grid, "comma list of N values");
  sc_stats->add_option("--mode", stats_mode)->check(CLI::IsMember({"exhaustive", "mc"}));
  sc_stats->add_option("--samples", stats_samples, "Monte-Carlo sample count");

  // spectral / moments
  CommonOpts c_spec, c_mom;
  int spec_order = 64, mom_order = 64;
  double spec_M = 10000, mom_M = 10000;
  CLI::App* sc_spec = app.add_subcommand("spectral", "transfer-operator eigendata report");
  add_common(sc_spec, c_spec);
  sc_spec->add_option("--grid-order", spec_order);
  sc_spec->add_option("--M", spec_M, "branch truncation");
  CLI::App* sc_mom = app.add_subcommand("moments", "mu(c) and delta^2(c)");
  add_common(sc_mom, c_mom);
  sc_mom->add_option("--grid-order", mom_order);
  sc_mom->add_option("--M", mom_M, "branch truncation");

  // dirichlet
  CommonOpts c_dir;
  double dir_tau = 0.0, dir_nmax = 1000;
  CLI::App* sc_dir = app.add_subcommand("dirichlet", "coefficients c_n(i tau)");
  add_common(sc_dir, c_dir);
  sc_dir->add_option("--tau", dir_tau);
  sc_dir->add_option("--nmax", dir_nmax);

  // verify
  CLI::App* sc_verify = app.add_subcommand("verify", "statement-level verification runs");
  sc_verify->require_subcommand(1);

  CommonOpts c_clt;
  std::string clt_grid = "1e3,1e4,1e5";
  double clt_mu = 0, clt_delta = 0, clt_ksmax = 0.05;
  CLI::App* sc_clt = sc_verify->add_subcommand("clt", "KS distance trend");
  add_common(sc_clt, c_clt);
  sc_clt->add_option("--N-grid", clt_grid);
  sc_clt->add_option("--mu", clt_mu, "override spectral mu");
  sc_clt->add_option("--delta", clt_delta, "override spectral delta");
  sc_clt->add_option("--ks-max", clt_ksmax);

  CommonOpts c_llt;
  double llt_N = 1e5, llt_samples = 1e7, llt_x = 0, llt_mu = 0, llt_delta = 0,
         llt_relmax = 0.25;
  std::string llt_mode = "exhaustive", llt_J = "-0.5,0.5";
  CLI::App* sc_llt = sc_verify->add_subcommand("llt", "local limit estimate");
  add_common(sc_llt, c_llt);
  sc_llt->add_option("--N", llt_N);
  sc_llt->add_option("--mode", llt_mode)->check(CLI::IsMember({"exhaustive", "mc"}));
  sc_llt->add_option("--samples", llt_samples);
  sc_llt->add_option("--x", llt_x);
  sc_llt->add_option("--J", llt_J, "window 'lo,hi' (half-open)");
  sc_llt->add_option("--mu", llt_mu);
  sc_llt->add_option("--delta", llt_delta);
  sc_llt->add_option("--rel-max", llt_relmax);

  CommonOpts c_qp;
  double qp_tau = 0.05, qp_N = 1e5, qp_relmax = 0.10;
  CLI::App* sc_qp = sc_verify->add_subcommand("quasipower", "quasi-power prediction");
  add_common(sc_qp, c_qp);
  sc_qp->add_option("--tau", qp_tau);
  sc_qp->add_option("--N", qp_N);
  sc_qp->add_option("--rel-max", qp_relmax);

  CommonOpts c_decay;
  double decay_tau = 1.0;
  std::string decay_grid = "1e3,1e4,1e5";
  CLI::App* sc_decay = sc_verify->add_subcommand("decay", "char-fn power-law decay");
  add_common(sc_decay, c_decay);
  sc_decay->add_option("--tau", decay_tau);
  sc_decay->add_option("--N-grid", decay_grid);

  CommonOpts c_id;
  double id_s = 1.5, id_tau = 0.0, id_nmax = 20000, id_tol = 1e-3;
  int id_neumann = 200;
  CLI::App* sc_id = sc_verify->add_subcommand("identity", "Dirichlet resolvent identity");
  add_common(sc_id, c_id);
  sc_id->add_option("--s", id_s);
  sc_id->add_option("--tau", id_tau);
  sc_id->add_option("--nmax", id_nmax);
  sc_id->add_option("--neumann", id_neumann);
  sc_id->add_option("--tol", id_tol);

  CommonOpts c_md;
  double md_N = 1e3, md_alpha0 = 0.25, md_factor = 3.0;
  CLI::App* sc_md = sc_verify->add_subcommand("model-distance", "smoothed-model distance");
  add_common(sc_md, c_md);
  sc_md->add_option("--N", md_N);
  sc_md->add_option("--alpha0", md_alpha0);
  sc_md->add_option("--factor", md_factor, "bound = factor * N^(-alpha0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sc_expand) return cmd_expand(c_expand, opt_u, opt_v, expand_json);
    if (*sc_stats) return cmd_stats(sc_stats, c_stats, stats_grid, stats_mode, stats_samples);
    if (*sc_spec) return cmd_spectral(sc_spec, c_spec, spec_order, spec_M, "spectral.json");
    if (*sc_mom) return cmd_spectral(sc_mom, c_mom, mom_order, mom_M, "moments.json");
    if (*sc_dir) return cmd_dirichlet(sc_dir, c_dir, dir_tau, dir_nmax);
    if (*sc_clt) return cmd_verify_clt(sc_clt, c_clt, clt_grid, clt_mu, clt_delta, clt_ksmax);
    if (*sc_llt)
      return cmd_verify_llt(sc_llt, c_llt, llt_N, llt_mode, llt_samples, llt_x, llt_J,
                            llt_mu, llt_delta, llt_relmax);
    if (*sc_qp) return cmd_verify_quasipower(sc_qp, c_qp, qp_tau, qp_N, qp_relmax);
    if (*sc_decay) return cmd_verify_decay(sc_decay, c_decay, decay_tau, decay_grid);
    if (*sc_id)
      return cmd_verify_identity(sc_id, c_id, id_s, id_tau, id_nmax, id_neumann, id_tol);
    if (*sc_md) return cmd_verify_model_distance(sc_md, c_md, md_N, md_alpha0, md_factor);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
