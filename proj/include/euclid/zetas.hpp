#ifndef EUCLID_ZETAS_HPP
#define EUCLID_ZETAS_HPP

#include <complex>
#include <cstdint>

#include "euclid/cost.hpp"

namespace euclid {

using cplx = std::complex<double>;

// Hurwitz zeta sum_{k>=0} (a+k)^(-z) for Re z > 1, a > 0, by Euler-Maclaurin
// after shifting a past ~max(32, |z|). Accurate to ~1e-15 in the ranges used.
cplx hurwitz_zeta(cplx z, double a);

// sum_{m >= a} m^p (m+x)^(-z) for integer a >= 8, |x| <= a/4, Re(z - p) > 1.
// Expands (m+x)^(-z) binomially so each term is a Hurwitz zeta.
cplx power_shift_tail(cplx z, cplx p, double x, uint64_t a);

// Same sum restricted to odd m.
cplx power_shift_tail_odd(cplx z, cplx p, double x, uint64_t a);

// Branch-weight tails for the transfer operator: the sum over admissible
// digits with quotient >= a in one sign family of
//   exp(w c(m, sign)) * (m + sign*x)^(-z)
// using the cost's tail model. x is in [0, 1], a large.
cplx cost_weight_tail(const CostFunction& cost, cplx z, cplx w, int sign, double x,
                      uint64_t a, bool odd_only);

}  // namespace euclid

#endif  // EUCLID_ZETAS_HPP
