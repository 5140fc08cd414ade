#include "euclid/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace euclid {

ChebyshevGrid::ChebyshevGrid(int order, double a_, double b_) : a(a_), b(b_) {
  if (order < 4) throw std::invalid_argument("ChebyshevGrid: order >= 4");
  if (!(b > a)) throw std::invalid_argument("ChebyshevGrid: b > a");
  int n = order;
  nodes.resize(n);
  bary.resize(n);
  quad.resize(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int j = 0; j < n; ++j) {
    double theta = (2.0 * j + 1.0) * M_PI / (2.0 * n);
    nodes[n - 1 - j] = mid + half * std::cos(theta);  // ascending
    bary[n - 1 - j] = ((j & 1) ? -1.0 : 1.0) * std::sin(theta);
    // Fejer first rule
    double w = 1.0;
    for (int k = 1; k <= n / 2; ++k)
      w -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    quad[n - 1 - j] = (2.0 / n) * w * half;
  }
}

Eigen::RowVectorXd ChebyshevGrid::interp_row(double y) const {
  int m = n();
  Eigen::RowVectorXd row(m);
  for (int i = 0; i < m; ++i) {
    if (y == nodes[i]) {
      row.setZero();
      row(i) = 1.0;
      return row;
    }
  }
  double denom = 0.0;
  for (int i = 0; i < m; ++i) {
    double t = bary[i] / (y - nodes[i]);
    row(i) = t;
    denom += t;
  }
  row /= denom;
  return row;
}

double ChebyshevGrid::eval(const Eigen::VectorXd& f, double y) const {
  return interp_row(y).dot(f);
}

std::complex<double> ChebyshevGrid::eval(const Eigen::VectorXcd& f, double y) const {
  Eigen::RowVectorXd row = interp_row(y);
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < f.size(); ++i) acc += row(i) * f(i);
  return acc;
}

double ChebyshevGrid::integrate(const Eigen::VectorXd& f) const {
  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i) acc += quad[i] * f(i);
  return acc;
}

std::complex<double> ChebyshevGrid::integrate(const Eigen::VectorXcd& f) const {
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < f.size(); ++i) acc += quad[i] * f(i);
  return acc;
}

const Eigen::MatrixXd& ChebyshevGrid::diff_matrix() const {
  if (!diff_ready_) {
    int m = n();
    diff_.resize(m, m);
    for (int i = 0; i < m; ++i) {
      double rowsum = 0.0;
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        double d = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
        diff_(i, j) = d;
        rowsum += d;
      }
      diff_(i, i) = -rowsum;
    }
    diff_ready_ = true;
  }
  return diff_;
}

}  // namespace euclid
