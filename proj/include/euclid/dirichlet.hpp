#ifndef EUCLID_DIRICHLET_HPP
#define EUCLID_DIRICHLET_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "euclid/cost.hpp"
#include "euclid/spectral.hpp"

namespace euclid {

// Per-denominator coefficients c_n(i tau) = sum over pairs with v = n of
// exp(i tau C(u, v)), their prefix sums Phi and Cesaro sums Psi.
struct DirichletData {
  Algo algo = Algo::Standard;
  std::string cost_name;
  double tau = 0.0;
  uint64_t n_max = 0;
  std::vector<std::complex<double>> c;  // index n in [1, n_max]
  // #pairs per denominator whose chain passes through the interval-endpoint
  // state, i.e. whose digit word is not the unique admissible spelling.
  std::vector<uint32_t> boundary_pairs;

  std::complex<double> coefficient(uint64_t n) const { return c.at(n); }
};

DirichletData coefficients(uint64_t n_max, double tau, const CostFunction& cost,
                           Algo algo);

struct PartialSums {
  std::vector<std::complex<double>> phi;  // Phi(N), N in [1, n_max]
  std::vector<std::complex<double>> psi;  // Psi(T) = sum c_n (T - n), T in [1, n_max]
};

PartialSums partial_sums(const DirichletData& data);

struct TruncatedS {
  std::complex<double> value;
  double tail_bound;
};

// Prefix of sum c_n / n^s with the |c_n| <= n tail bound; requires Re s > 2.
TruncatedS truncated_S(std::complex<double> s, const DirichletData& data);

struct IdentityReport {
  double s = 0.0;
  double tau = 0.0;
  std::complex<double> lhs;  // Dirichlet side (adjusted; see below)
  std::complex<double> rhs;  // word side F (I - H)^{-1} [1] (0)
  double diff = 0.0;
  double lhs_tail = 0.0;
  double rhs_tail = 0.0;
  // Standard rule: the word sum excludes the pair (1,1), whose single-digit
  // spelling has no admissible final digit; the lhs drops that term.
  std::complex<double> excluded_term{0.0, 0.0};
  // Centered/odd rules: pairs hitting the interval endpoint mid-run have two
  // admissible spellings; |extra words| <= slack.
  double slack = 0.0;
  uint64_t neumann_terms = 0;
};

IdentityReport identity_check(double s, double tau, const CostFunction& cost,
                              Algo algo, uint64_t n_max, int n_neumann,
                              int grid_order = 64, uint64_t M = 10000);

}  // namespace euclid

#endif  // EUCLID_DIRICHLET_HPP
