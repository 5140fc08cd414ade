#include "euclid/dirichlet.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "euclid/sample_space.hpp"
#include "euclid/zetas.hpp"

namespace euclid {

namespace {

// Chain evaluation with boundary detection: flags pairs whose run passes
// through the interval-endpoint state mid-run ((1,2) for the centered rule,
// (1,1) for the odd rule); those pairs have a second admissible digit word.
double chain_with_boundary(const CostFunction& c, Algo algo, uint64_t u, uint64_t v,
                           bool& boundary) {
  double total = 0.0;
  uint64_t big = v, small = u;
  boundary = false;
  while (true) {
    DivStep st = divide(big, small, algo);
    total += c(st.digit);
    if (st.r == 0) break;
    big = small;
    small = st.r;
    if (algo == Algo::Centered && small == 1 && big == 2) boundary = true;
    if (algo == Algo::Odd && small == 1 && big == 1) boundary = true;
  }
  return total;
}

}  // namespace

DirichletData coefficients(uint64_t n_max, double tau, const CostFunction& cost,
                           Algo algo) {
  if (n_max < 1) throw std::invalid_argument("coefficients: n_max >= 1");
  DirichletData data;
  data.algo = algo;
  data.cost_name = cost.name();
  data.tau = tau;
  data.n_max = n_max;
  data.c.assign(n_max + 1, {0.0, 0.0});
  data.boundary_pairs.assign(n_max + 1, 0);
  enumerate_pairs_block(1, n_max, algo, [&](uint64_t u, uint64_t v) {
    bool boundary = false;
    double cv = chain_with_boundary(cost, algo, u, v, boundary);
    data.c[v] += std::polar(1.0, tau * cv);
    if (boundary) data.boundary_pairs[v] += 1;
  });
  return data;
}

PartialSums partial_sums(const DirichletData& data) {
  PartialSums ps;
  uint64_t n = data.n_max;
  ps.phi.assign(n + 1, {0.0, 0.0});
  ps.psi.assign(n + 1, {0.0, 0.0});
  std::complex<double> run{0.0, 0.0};
  for (uint64_t k = 1; k <= n; ++k) {
    run += data.c[k];
    ps.phi[k] = run;
  }
  // Psi(T) = sum_{n<=T} c_n (T-n) telescopes into the strict prefix sum of Phi.
  std::complex<double> acc{0.0, 0.0};
  for (uint64_t t = 1; t <= n; ++t) {
    ps.psi[t] = acc;
    acc += ps.phi[t];
  }
  return ps;
}

TruncatedS truncated_S(std::complex<double> s, const DirichletData& data) {
  if (s.real() <= 2.0)
    throw std::domain_error("truncated_S: Re(s) > 2 required for the tail bound");
  std::complex<double> acc{0.0, 0.0};
  for (uint64_t n = 1; n <= data.n_max; ++n)
    acc += data.c[n] * std::exp(-s * std::log(double(n)));
  TruncatedS out;
  out.value = acc;
  // |c_n| <= n
  out.tail_bound =
      hurwitz_zeta(std::complex<double>(s.real() - 1.0, 0.0), double(data.n_max + 1))
          .real();
  return out;
}

IdentityReport identity_check(double s, double tau, const CostFunction& cost,
                              Algo algo, uint64_t n_max, int n_neumann,
                              int grid_order, uint64_t M) {
  if (!(s > 1.0 && s <= 1.5))
    throw std::invalid_argument("identity_check: s in (1, 1.5]");
  IdentityReport rep;
  rep.s = s;
  rep.tau = tau;

  DirichletData data = coefficients(n_max, tau, cost, algo);
  TruncatedS S = truncated_S(std::complex<double>(2.0 * s, 0.0), data);
  if (algo == Algo::Standard)
    rep.excluded_term = std::polar(1.0, tau * cost(1, +1));
  rep.lhs = S.value - rep.excluded_term;
  rep.lhs_tail = S.tail_bound;

  double slack = 0.0;
  for (uint64_t n = 1; n <= n_max; ++n)
    if (data.boundary_pairs[n])
      slack += double(data.boundary_pairs[n]) * std::pow(double(n), -2.0 * s);
  rep.slack = slack;

  auto grid = make_grid(algo, grid_order);
  std::complex<double> sc(s, 0.0), wc(0.0, tau);
  TransferOperator H = build_operator(sc, wc, cost, algo, grid, M, false);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.mat, false);
  double rho = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    rho = std::max(rho, std::abs(es.eigenvalues()(i)));
  if (rho >= 1.0 - 1e-9)
    throw std::runtime_error(
        "identity_check: spectral radius >= 1, Neumann series diverges");

  const int n = H.n();
  Eigen::VectorXcd term = Eigen::VectorXcd::Ones(n);
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(n);
  uint64_t k = 0;
  double term_norm = 1.0;
  for (; k < uint64_t(std::max(1, n_neumann)); ++k) {
    total += term;
    term = H.mat * term;
    term_norm = term.cwiseAbs().maxCoeff();
    if (term_norm < 1e-15 * total.cwiseAbs().maxCoeff()) break;
  }
  rep.neumann_terms = k;

  TransferOperator F = build_operator(sc, wc, cost, algo, grid, M, true);
  rep.rhs = apply_at(F, total, 0.0);
  double rest = std::abs(apply_at(F, term, 0.0));
  rep.rhs_tail = rest / (1.0 - rho) + 2.0 * (H.tail_bound + F.tail_bound);
  rep.diff = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace euclid
