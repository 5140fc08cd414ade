#include "euclid/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace euclid {

namespace {

using cplxd = std::complex<double>;

double inf_norm(const Eigen::VectorXcd& v) {
  double m = 0.0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
  return m;
}

}  // namespace

EigenPair dominant_eigenpair(const TransferOperator& op) {
  const Eigen::MatrixXcd& A = op.mat;
  const int n = int(A.rows());
  double scale = A.cwiseAbs().rowwise().sum().maxCoeff();

  auto power = [&](const Eigen::MatrixXcd& mat, EigenPair& out) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(double(n));
    cplxd lam{0.0, 0.0};
    int it = 0;
    double res = 0.0;
    for (it = 1; it <= 500; ++it) {
      Eigen::VectorXcd av = mat * v;
      lam = v.dot(av);  // Rayleigh quotient (v normalized)
      res = inf_norm(av - lam * v);
      v = av / av.norm();
      if (res <= 1e-13 * scale && it >= 8) break;
    }
    // inverse-iteration polish
    for (int k = 0; k < 3 && res > 1e-14 * scale; ++k) {
      cplxd shift = lam * (1.0 + 1e-12) + cplxd(0.0, 1e-14);
      Eigen::MatrixXcd B = mat - shift * Eigen::MatrixXcd::Identity(n, n);
      Eigen::VectorXcd y = B.partialPivLu().solve(v);
      v = y / y.norm();
      Eigen::VectorXcd av = mat * v;
      lam = v.dot(av);
      res = inf_norm(av - lam * v);
    }
    if (res > 1e-9 * scale)
      throw std::runtime_error(
          "dominant_eigenpair: iteration did not converge (residual " +
          std::to_string(res) + ")");
    out.lambda = lam;
    out.iterations = it;
    out.residual = res;
    out.right = v;
  };

  EigenPair pair;
  power(A, pair);
  EigenPair leftp;
  power(A.transpose(), leftp);
  pair.left = leftp.right;

  // For real parameters the dominant pair is real positive; normalize phases.
  auto realign = [](Eigen::VectorXcd& v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > best) { best = std::abs(v(i)); imax = i; }
    cplxd phase = v(imax) / std::abs(v(imax));
    v /= phase;
  };
  realign(pair.right);
  realign(pair.left);
  if (std::abs(pair.lambda.imag()) < 1e-11 * std::abs(pair.lambda))
    pair.lambda = cplxd(pair.lambda.real(), 0.0);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  double sub = 0.0;
  double best_match = 1e300;
  int match = -1;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double d = std::abs(es.eigenvalues()(i) - pair.lambda);
    if (d < best_match) { best_match = d; match = i; }
  }
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (i != match) sub = std::max(sub, std::abs(es.eigenvalues()(i)));
  pair.r_sub = sub;
  return pair;
}

SpectralContext::SpectralContext(const CostFunction& cost, Algo algo, int grid_order,
                                 uint64_t M)
    : cost_(cost), algo_(algo), M_(M), grid_(make_grid(algo, grid_order)) {}

TransferOperator SpectralContext::build(cplxd s, cplxd w, bool final_only) const {
  return build_operator(s, w, cost_, algo_, grid_, M_, final_only);
}

cplxd SpectralContext::lambda(cplxd s, cplxd w) {
  std::array<double, 4> key{s.real(), s.imag(), w.real(), w.imag()};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  TransferOperator op = build(s, w);
  tail_bound_ = std::max(tail_bound_, op.tail_bound);
  EigenPair pair = dominant_eigenpair(op);
  cache_.emplace(key, pair.lambda);
  return pair.lambda;
}

cplxd SpectralContext::solve_sigma(cplxd w, double tol) {
  // Continuation from sigma(0) = 1 in steps small enough for Newton.
  double dist = std::abs(w);
  int steps = std::max(1, int(std::ceil(dist / 0.02)));
  cplxd sigma{1.0, 0.0};
  for (int k = 1; k <= steps; ++k) {
    cplxd wk = w * (double(k) / steps);
    cplxd f = lambda(sigma, wk) - 1.0;
    double h = 1e-5;
    cplxd df = (lambda(sigma + h, wk) - lambda(sigma - h, wk)) / (2.0 * h);
    cplxd prev_sigma = sigma, prev_f = f;
    int it = 0;
    for (it = 0; it < 60; ++it) {
      if (std::abs(f) <= tol) break;
      cplxd next = sigma - f / df;
      cplxd fn = lambda(next, wk) - 1.0;
      // secant update of the derivative
      if (next != sigma) df = (fn - f) / (next - sigma);
      prev_sigma = sigma;
      prev_f = f;
      sigma = next;
      f = fn;
    }
    (void)prev_sigma;
    (void)prev_f;
    if (std::abs(f) > std::max(tol, 1e-10))
      throw std::runtime_error(
          "solve_sigma: Newton did not converge; try a smaller |w|");
  }
  return sigma;
}

PressureReport pressure_and_derivatives(SpectralContext& ctx) {
  auto pres = [&](double sigma, double w) {
    cplxd lam = ctx.lambda(cplxd(sigma, 0.0), cplxd(w, 0.0));
    if (!(lam.real() > 0.0))
      throw std::runtime_error("pressure: dominant eigenvalue not positive");
    return std::log(lam.real());
  };
  PressureReport rep;
  rep.pressure_at_1 = pres(1.0, 0.0);
  const double h1 = 1e-2, h2 = 5e-3;
  auto d1 = [&](double h) { return (pres(1.0 + h, 0.0) - pres(1.0 - h, 0.0)) / (2 * h); };
  rep.d_sigma = (4.0 * d1(h2) - d1(h1)) / 3.0;
  double p0 = rep.pressure_at_1;
  auto d2s = [&](double h) {
    return (pres(1.0 + h, 0.0) - 2.0 * p0 + pres(1.0 - h, 0.0)) / (h * h);
  };
  rep.d2_sigma = (4.0 * d2s(h2) - d2s(h1)) / 3.0;
  auto d2w = [&](double h) {
    return (pres(1.0, h) - 2.0 * p0 + pres(1.0, -h)) / (h * h);
  };
  rep.d2_w = (4.0 * d2w(h2) - d2w(h1)) / 3.0;
  return rep;
}

MomentConstants moment_constants(SpectralContext& ctx, double h) {
  auto sig = [&](double w) { return ctx.solve_sigma(cplxd(w, 0.0)).real(); };
  double s1p = sig(h), s1m = sig(-h), s2p = sig(2 * h), s2m = sig(-2 * h);
  MomentConstants mc;
  mc.sigma_prime = (8.0 * (s1p - s1m) - (s2p - s2m)) / (12.0 * h);
  mc.sigma_second =
      (16.0 * (s1p + s1m) - (s2p + s2m) - 30.0 * 1.0) / (12.0 * h * h);
  mc.mu = 2.0 * mc.sigma_prime;
  mc.delta2 = 2.0 * mc.sigma_second;
  return mc;
}

QuasiPower quasi_power_predict(SpectralContext& ctx, uint64_t N, double tau) {
  QuasiPower qp;
  auto e_value = [&](cplxd s, cplxd w) {
    TransferOperator H = ctx.build(s, w);
    EigenPair pair = dominant_eigenpair(H);
    double h = 1e-4;
    cplxd dlam = (ctx.lambda(s + h, w) - ctx.lambda(s - h, w)) / (2.0 * h);
    cplxd lsum{0.0, 0.0}, lpsi{0.0, 0.0};
    for (int i = 0; i < pair.left.size(); ++i) {
      lsum += pair.left(i);
      lpsi += pair.left(i) * pair.right(i);
    }
    // R[1] = -P[1]/lambda'_s with P the spectral projector
    Eigen::VectorXcd r1 = pair.right * (lsum / lpsi) * (-1.0 / dlam);
    TransferOperator F = ctx.build(s, w, /*final_only=*/true);
    return apply_at(F, r1, 0.0);
  };
  qp.sigma_itau = ctx.solve_sigma(cplxd(0.0, tau));
  qp.e_itau = e_value(qp.sigma_itau, cplxd(0.0, tau));
  qp.e_zero = e_value(cplxd(1.0, 0.0), cplxd(0.0, 0.0));
  qp.coefficient = qp.e_itau / (qp.e_zero * qp.sigma_itau);
  qp.prediction =
      qp.coefficient * std::exp(2.0 * (qp.sigma_itau - 1.0) * std::log(double(N)));
  return qp;
}

ResolventProbe resolvent_norm_probe(SpectralContext& ctx, cplxd s, double tau) {
  ResolventProbe probe;
  TransferOperator op = ctx.build(s, cplxd(0.0, tau));
  const int n = op.n();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.mat, false);
  double gap = 1e300;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    gap = std::min(gap, std::abs(1.0 - es.eigenvalues()(i)));
  probe.unit_gap = gap;
  if (gap < 1e-8) {
    probe.singular = true;
    probe.norm_estimate = std::numeric_limits<double>::infinity();
    return probe;
  }

  Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(n, n) - op.mat;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(B);
  const Eigen::MatrixXd& D = ctx.grid()->diff_matrix();
  double t = std::max(1.0, std::abs(s.imag()));
  auto norm1t = [&](const Eigen::VectorXcd& f) {
    Eigen::VectorXcd df = D * f;
    return inf_norm(f) + inf_norm(df) / t;
  };

  std::vector<Eigen::VectorXcd> candidates;
  candidates.push_back(Eigen::VectorXcd::Ones(n));
  const auto& nodes = ctx.grid()->nodes;
  double a = ctx.grid()->a, b = ctx.grid()->b;
  for (int k = 1; k <= 6; ++k) {
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i)
      f(i) = std::cos(k * M_PI * (nodes[i] - a) / (b - a));
    candidates.push_back(f);
  }
  // top l2 singular direction of the resolvent
  {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_adj(B.adjoint());
    Eigen::VectorXcd g = Eigen::VectorXcd::Ones(n).normalized();
    for (int it = 0; it < 40; ++it) {
      Eigen::VectorXcd rg = lu.solve(g);
      Eigen::VectorXcd back = lu_adj.solve(rg);
      g = back.normalized();
    }
    candidates.push_back(g);
  }
  std::mt19937_64 rng(20240901);
  for (int k = 0; k < 40; ++k) {
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i) {
      double re = double(rng()) / double(UINT64_MAX) - 0.5;
      double im = double(rng()) / double(UINT64_MAX) - 0.5;
      f(i) = cplxd(re, im);
    }
    candidates.push_back(f);
  }

  double best = 0.0;
  for (const auto& f : candidates) {
    double nf = norm1t(f);
    if (nf <= 0.0) continue;
    best = std::max(best, norm1t(lu.solve(f)) / nf);
  }
  probe.norm_estimate = best;
  return probe;
}

SpectralModel compute_spectral_model(const CostFunction& cost, Algo algo,
                                     int grid_order, uint64_t M) {
  SpectralContext ctx(cost, algo, grid_order, M);
  SpectralModel model;
  model.algo = algo;
  model.cost_name = cost.name();
  model.grid_order = grid_order;
  model.M = M;
  TransferOperator op = ctx.build(cplxd(1.0, 0.0), cplxd(0.0, 0.0));
  EigenPair pair = dominant_eigenpair(op);
  model.lambda_one = pair.lambda.real();
  model.r_sub = pair.r_sub;
  model.gap_ratio = pair.r_sub / std::abs(pair.lambda);
  model.pressure = pressure_and_derivatives(ctx);
  model.moments = moment_constants(ctx);
  model.tail_bound = std::max(op.tail_bound, ctx.max_tail_bound());
  return model;
}

}  // namespace euclid
