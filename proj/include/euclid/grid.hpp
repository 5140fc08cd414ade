#ifndef EUCLID_GRID_HPP
#define EUCLID_GRID_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace euclid {

// Collocation grid of Chebyshev first-kind points mapped to [a, b] with
// barycentric interpolation, differentiation and Fejer quadrature. The nodes
// are strictly interior; evaluation anywhere in [a, b] (including the
// endpoints) is polynomial interpolation/extrapolation of the grid values.
struct ChebyshevGrid {
  ChebyshevGrid(int order, double a, double b);

  int n() const { return int(nodes.size()); }

  // Barycentric weights of ell_i(y); exact unit row when y hits a node.
  Eigen::RowVectorXd interp_row(double y) const;
  double eval(const Eigen::VectorXd& f, double y) const;
  std::complex<double> eval(const Eigen::VectorXcd& f, double y) const;
  double integrate(const Eigen::VectorXd& f) const;
  std::complex<double> integrate(const Eigen::VectorXcd& f) const;
  const Eigen::MatrixXd& diff_matrix() const;

  double a, b;
  std::vector<double> nodes;
  std::vector<double> bary;
  std::vector<double> quad;

 private:
  mutable Eigen::MatrixXd diff_;
  mutable bool diff_ready_ = false;
};

}  // namespace euclid

#endif  // EUCLID_GRID_HPP
