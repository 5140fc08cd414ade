#include "euclid/transfer_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "euclid/zetas.hpp"

namespace euclid {

std::vector<BranchFamily> branch_families(Algo a, bool final_only) {
  switch (a) {
    case Algo::Standard:
      if (final_only) return {{+1, 2, false}};
      return {{+1, 1, false}};
    case Algo::Centered:
      if (final_only) return {{+1, 2, false}};
      return {{+1, 2, false}, {-1, 3, false}};
    case Algo::Odd:
      if (final_only) return {{+1, 1, true}};
      return {{+1, 1, true}, {-1, 3, true}};
  }
  return {};
}

std::shared_ptr<const ChebyshevGrid> make_grid(Algo a, int order) {
  Interval dom = domain_interval(a);
  return std::make_shared<const ChebyshevGrid>(order, dom.lo, dom.hi);
}

namespace {

void check_window(std::complex<double> s, std::complex<double> w,
                  const CostFunction& cost) {
  if (s.real() <= 0.5)
    throw std::domain_error("build_operator: Re(s) must exceed 1/2");
  double margin = 2.0 * s.real() - std::max(0.0, w.real()) * cost.growth_exponent();
  if (margin <= 1.0)
    throw std::domain_error(
        "build_operator: (s, w) outside the cost's moderate-growth window");
}

// Accumulate wt * ell_i(y) into row[i]; barycentric second form with an
// exact-hit fallback.
template <typename Row>
inline void add_interp(const ChebyshevGrid& grid, double y,
                       std::complex<double> wt, Row&& row, double* scratch) {
  const int n = grid.n();
  double denom = 0.0;
  for (int i = 0; i < n; ++i) {
    double t = grid.bary[i] / (y - grid.nodes[i]);
    scratch[i] = t;
    denom += t;
  }
  if (std::isfinite(denom) && denom != 0.0) {
    std::complex<double> f = wt / denom;
    for (int i = 0; i < n; ++i) row[i] += f * scratch[i];
    return;
  }
  for (int i = 0; i < n; ++i)
    if (y == grid.nodes[i]) {
      row[i] += wt;
      return;
    }
  throw std::runtime_error("interp: non-finite barycentric denominator");
}

struct TailMoments {
  std::complex<double> t0, t1, t2;
  double remainder;  // per unit of sup|f'''|
};

TailMoments tail_moments(const CostFunction& cost, std::complex<double> z,
                         std::complex<double> w, const BranchFamily& fam, double x,
                         uint64_t M) {
  uint64_t a = std::max<uint64_t>(M + 1, fam.m_min);
  TailMoments tm;
  tm.t0 = cost_weight_tail(cost, z, w, fam.sign, x, a, fam.odd_only);
  tm.t1 = cost_weight_tail(cost, z + 1.0, w, fam.sign, x, a, fam.odd_only);
  tm.t2 = cost_weight_tail(cost, z + 2.0, w, fam.sign, x, a, fam.odd_only);
  std::complex<double> t3 =
      cost_weight_tail(cost, std::complex<double>(z.real() + 3.0, 0.0),
                       std::complex<double>(w.real(), 0.0), fam.sign, x, a,
                       fam.odd_only);
  tm.remainder = std::abs(t3) / 6.0;
  return tm;
}

}  // namespace

TransferOperator build_operator(std::complex<double> s, std::complex<double> w,
                                const CostFunction& cost, Algo algo,
                                std::shared_ptr<const ChebyshevGrid> grid, uint64_t M,
                                bool final_only) {
  if (M < 100) throw std::invalid_argument("build_operator: M >= 100");
  check_window(s, w, cost);
  if (cost.kind() == CostFunction::Kind::Table && cost.exceptional_m() > M)
    throw std::invalid_argument(
        "build_operator: cost table has entries beyond the truncation M");

  TransferOperator op;
  op.algo = algo;
  op.cost = cost;
  op.s = s;
  op.w = w;
  op.M = M;
  op.final_only = final_only;
  op.grid = grid;
  const int n = grid->n();
  op.mat = Eigen::MatrixXcd::Zero(n, n);

  const std::complex<double> z = 2.0 * s;
  const std::vector<BranchFamily> fams = branch_families(algo, final_only);

  Eigen::RowVectorXd e0 = grid->interp_row(grid->a);
  const Eigen::MatrixXd& D = grid->diff_matrix();
  Eigen::RowVectorXd e1 = e0 * D;
  Eigen::RowVectorXd e2 = e1 * D;

  std::vector<double> scratch(n);
  std::vector<std::complex<double>> row(n);
  const bool indicator_extra =
      cost.kind() == CostFunction::Kind::Indicator && cost.exceptional_m() > M;

  for (int j = 0; j < n; ++j) {
    double x = grid->nodes[j];
    std::fill(row.begin(), row.end(), std::complex<double>(0.0, 0.0));
    for (const BranchFamily& fam : fams) {
      uint64_t step = fam.odd_only ? 2 : 1;
      for (uint64_t m = fam.m_min; m <= M; m += step) {
        double base = double(m) + fam.sign * x;
        std::complex<double> wt = std::exp(w * cost(m, fam.sign) - z * std::log(base));
        add_interp(*grid, 1.0 / base, wt, row, scratch.data());
      }
      TailMoments tm = tail_moments(cost, z, w, fam, x, M);
      for (int i = 0; i < n; ++i)
        row[i] += tm.t0 * e0(i) + tm.t1 * e1(i) + 0.5 * tm.t2 * e2(i);
      op.tail_bound = std::max(op.tail_bound, tm.remainder);
    }
    if (indicator_extra) {
      for (const BranchFamily& fam : fams) {
        Digit q0{cost.exceptional_m(), fam.sign};
        if (!digit_admissible(algo, q0) || q0.m < fam.m_min) continue;
        if (fam.odd_only && q0.m % 2 == 0) continue;
        double cv = cost(q0.m, fam.sign);
        if (cv == 0.0) continue;
        double base = double(q0.m) + fam.sign * x;
        std::complex<double> wt =
            (std::exp(w * cv) - 1.0) * std::exp(-z * std::log(base));
        add_interp(*grid, 1.0 / base, wt, row, scratch.data());
      }
    }
    for (int i = 0; i < n; ++i) op.mat(j, i) = row[i];
  }
  return op;
}

std::complex<double> apply_at(const TransferOperator& op, const Eigen::VectorXcd& f,
                              double x) {
  const ChebyshevGrid& grid = *op.grid;
  const std::complex<double> z = 2.0 * op.s;
  const std::vector<BranchFamily> fams = branch_families(op.algo, op.final_only);
  const CostFunction& cost = op.cost;

  Eigen::RowVectorXd e0 = grid.interp_row(grid.a);
  const Eigen::MatrixXd& D = grid.diff_matrix();
  Eigen::RowVectorXd e1 = e0 * D;
  Eigen::RowVectorXd e2 = e1 * D;
  auto dotc = [&](const Eigen::RowVectorXd& r) {
    std::complex<double> v{0.0, 0.0};
    for (int i = 0; i < f.size(); ++i) v += r(i) * f(i);
    return v;
  };
  std::complex<double> f0 = dotc(e0), f1 = dotc(e1), f2 = dotc(e2);

  std::complex<double> acc{0.0, 0.0};
  for (const BranchFamily& fam : fams) {
    uint64_t step = fam.odd_only ? 2 : 1;
    for (uint64_t m = fam.m_min; m <= op.M; m += step) {
      double base = double(m) + fam.sign * x;
      std::complex<double> wt =
          std::exp(op.w * cost(m, fam.sign) - z * std::log(base));
      acc += wt * grid.eval(f, 1.0 / base);
    }
    TailMoments tm = tail_moments(cost, z, op.w, fam, x, op.M);
    acc += tm.t0 * f0 + tm.t1 * f1 + 0.5 * tm.t2 * f2;
  }
  if (cost.kind() == CostFunction::Kind::Indicator && cost.exceptional_m() > op.M) {
    for (const BranchFamily& fam : fams) {
      Digit q0{cost.exceptional_m(), fam.sign};
      if (!digit_admissible(op.algo, q0) || q0.m < fam.m_min) continue;
      if (fam.odd_only && q0.m % 2 == 0) continue;
      double cv = cost(q0.m, fam.sign);
      if (cv == 0.0) continue;
      double base = double(q0.m) + fam.sign * x;
      std::complex<double> wt =
          (std::exp(op.w * cv) - 1.0) * std::exp(-z * std::log(base));
      acc += wt * grid.eval(f, 1.0 / base);
    }
  }
  return acc;
}

}  // namespace euclid
