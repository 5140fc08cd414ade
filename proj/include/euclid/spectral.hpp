#ifndef EUCLID_SPECTRAL_HPP
#define EUCLID_SPECTRAL_HPP

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <string>

#include "euclid/transfer_operator.hpp"

namespace euclid {

struct EigenPair {
  std::complex<double> lambda;
  Eigen::VectorXcd right;
  Eigen::VectorXcd left;
  double r_sub = 0.0;  // modulus of the second-largest eigenvalue
  int iterations = 0;
  double residual = 0.0;
};

// Dominant eigendata by power iteration with inverse-iteration polish;
// subdominant radius from the full spectrum of the collocation matrix.
EigenPair dominant_eigenpair(const TransferOperator& op);

// Caches dominant eigenvalues of H_{s,w} on a fixed grid/truncation, so the
// finite-difference drivers reuse repeated evaluation points.
class SpectralContext {
 public:
  SpectralContext(const CostFunction& cost, Algo algo, int grid_order = 64,
                  uint64_t M = 10000);

  std::complex<double> lambda(std::complex<double> s, std::complex<double> w);
  TransferOperator build(std::complex<double> s, std::complex<double> w,
                         bool final_only = false) const;

  // Newton/continuation solution of lambda(sigma(w), w) = 1 near sigma = 1.
  std::complex<double> solve_sigma(std::complex<double> w, double tol = 1e-12);

  const std::shared_ptr<const ChebyshevGrid>& grid() const { return grid_; }
  const CostFunction& cost() const { return cost_; }
  Algo algo() const { return algo_; }
  uint64_t truncation() const { return M_; }
  double max_tail_bound() const { return tail_bound_; }

 private:
  CostFunction cost_;
  Algo algo_;
  uint64_t M_;
  std::shared_ptr<const ChebyshevGrid> grid_;
  std::map<std::array<double, 4>, std::complex<double>> cache_;
  double tail_bound_ = 0.0;
};

struct PressureReport {
  double pressure_at_1 = 0.0;   // Lambda(1) = log lambda(1, 0)
  double d_sigma = 0.0;         // Lambda'(1)
  double d2_sigma = 0.0;        // d^2/ds^2 Lambda at (1,0)
  double d2_w = 0.0;            // d^2/dw^2 Lambda at (1,0), real w direction
};

// Central differences with one Richardson step (base steps 1e-2 and 5e-3).
PressureReport pressure_and_derivatives(SpectralContext& ctx);

struct MomentConstants {
  double mu = 0.0;
  double delta2 = 0.0;
  double sigma_prime = 0.0;
  double sigma_second = 0.0;
};

// mu = 2 sigma'(0), delta^2 = 2 sigma''(0) by Richardson central differences
// of solve_sigma along real w (steps h, 2h with h = 1e-3).
MomentConstants moment_constants(SpectralContext& ctx, double h = 1e-3);

struct QuasiPower {
  std::complex<double> prediction;   // coefficient * N^(2(sigma(i tau)-1))
  std::complex<double> sigma_itau;
  std::complex<double> coefficient;  // E(i tau) / (E(0) sigma(i tau))
  std::complex<double> e_itau;
  std::complex<double> e_zero;
};

QuasiPower quasi_power_predict(SpectralContext& ctx, uint64_t N, double tau);

struct ResolventProbe {
  double norm_estimate = 0.0;
  bool singular = false;
  double unit_gap = 0.0;  // min |1 - eig|
};

// Estimates ||(I - H_{s,i tau})^{-1}|| in the norm sup|f| + sup|f'|/|t|
// (t = Im s) on the grid. Exploratory sampling estimate, not a bound.
ResolventProbe resolvent_norm_probe(SpectralContext& ctx, std::complex<double> s,
                                    double tau);

// Aggregated spectral data for one (algorithm, cost) pair.
struct SpectralModel {
  Algo algo = Algo::Standard;
  std::string cost_name;
  int grid_order = 0;
  uint64_t M = 0;
  double lambda_one = 0.0;  // lambda(1, 0)
  double r_sub = 0.0;
  double gap_ratio = 0.0;   // r_sub / lambda
  PressureReport pressure;
  MomentConstants moments;
  double tail_bound = 0.0;
};

SpectralModel compute_spectral_model(const CostFunction& cost, Algo algo,
                                     int grid_order = 64, uint64_t M = 10000);

}  // namespace euclid

#endif  // EUCLID_SPECTRAL_HPP
