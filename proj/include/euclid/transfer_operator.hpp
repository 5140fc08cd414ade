#ifndef EUCLID_TRANSFER_OPERATOR_HPP
#define EUCLID_TRANSFER_OPERATOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "euclid/cost.hpp"
#include "euclid/grid.hpp"

namespace euclid {

// Inverse-branch family of one algorithm: quotients m >= m_min of one sign,
// optionally restricted to odd m.
struct BranchFamily {
  int sign;
  uint64_t m_min;
  bool odd_only;
};

std::vector<BranchFamily> branch_families(Algo a, bool final_only);

// Collocation image of the weighted transfer operator
//   H[f](x) = sum over branches exp(w c(h)) |h'(x)|^s f(h(x)).
// Branches with quotient <= M are summed directly; the remainder is folded in
// through an order-2 expansion of f at the branch accumulation point 0, with
// all tail weight sums evaluated in closed form (Hurwitz zeta series).
struct TransferOperator {
  Algo algo = Algo::Standard;
  CostFunction cost = CostFunction::unit();
  std::complex<double> s{1.0, 0.0};
  std::complex<double> w{0.0, 0.0};
  uint64_t M = 0;
  bool final_only = false;
  std::shared_ptr<const ChebyshevGrid> grid;
  Eigen::MatrixXcd mat;
  // Bound on the neglected order-3 remainder, per unit of sup|f'''|.
  double tail_bound = 0.0;

  int n() const { return int(mat.rows()); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const { return mat * f; }
};

std::shared_ptr<const ChebyshevGrid> make_grid(Algo a, int order);

TransferOperator build_operator(std::complex<double> s, std::complex<double> w,
                                const CostFunction& cost, Algo algo,
                                std::shared_ptr<const ChebyshevGrid> grid, uint64_t M,
                                bool final_only = false);

// Operator action on grid values of f, evaluated at an arbitrary point of the
// closed interval (same truncation and tail treatment as the matrix rows).
std::complex<double> apply_at(const TransferOperator& op, const Eigen::VectorXcd& f,
                              double x);

}  // namespace euclid

#endif  // EUCLID_TRANSFER_OPERATOR_HPP
