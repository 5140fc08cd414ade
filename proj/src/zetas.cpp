#include "euclid/zetas.hpp"

#include <cmath>
#include <stdexcept>

namespace euclid {

namespace {

// B_{2j} / (2j)! for j = 1..6
constexpr double kBernFact[6] = {
    1.0 / 12.0,           -1.0 / 720.0,          1.0 / 30240.0,
    -1.0 / 1209600.0,     1.0 / 47900160.0,      -691.0 / 1307674368000.0,
};

inline cplx real_pow(double base, cplx e) {
  // base^e for base > 0
  return std::exp(e * std::log(base));
}

}  // namespace

cplx hurwitz_zeta(cplx z, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: a > 0");
  if (z.real() <= 1.0) throw std::invalid_argument("hurwitz_zeta: Re z > 1 required");
  double target = std::max(32.0, 1.5 * std::abs(z));
  cplx acc{0.0, 0.0};
  double A = a;
  while (A < target) {
    acc += real_pow(A, -z);
    A += 1.0;
  }
  cplx az = real_pow(A, -z);           // A^(-z)
  acc += az * A / (z - 1.0);           // A^(1-z)/(z-1)
  acc += 0.5 * az;
  cplx rising = z;                      // z (z+1) ... (z+2j-2)
  double apw = 1.0 / A;                 // A^(-(2j-1))
  for (int j = 1; j <= 6; ++j) {
    acc += kBernFact[j - 1] * rising * az * apw;
    rising *= (z + double(2 * j - 1)) * (z + double(2 * j));
    apw /= A * A;
  }
  return acc;
}

cplx power_shift_tail(cplx z, cplx p, double x, uint64_t a) {
  if ((z - p).real() <= 1.0)
    throw std::invalid_argument("power_shift_tail: Re(z - p) > 1 required");
  if (a < 8 || std::fabs(x) > 0.25 * double(a))
    throw std::invalid_argument("power_shift_tail: need a >= 8 and |x| <= a/4");
  cplx acc{0.0, 0.0};
  cplx binom{1.0, 0.0};  // binom(-z, k) * x^k accumulated
  for (int k = 0; k < 64; ++k) {
    cplx term = binom * hurwitz_zeta(z + double(k) - p, double(a));
    acc += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
    binom *= (-z - double(k)) * x / double(k + 1);
  }
  return acc;
}

cplx power_shift_tail_odd(cplx z, cplx p, double x, uint64_t a) {
  cplx all = power_shift_tail(z, p, x, a);
  uint64_t t0 = (a + 1) / 2;  // even m >= a are m = 2t, t >= ceil(a/2)
  cplx evens = real_pow(2.0, p - z) * power_shift_tail(z, p, 0.5 * x, t0);
  return all - evens;
}

namespace {

cplx range_sum(cplx z, cplx p, double x, uint64_t lo, uint64_t hi, bool odd_only) {
  // sum over m in [lo, hi)
  if (odd_only)
    return power_shift_tail_odd(z, p, x, lo) - power_shift_tail_odd(z, p, x, hi);
  return power_shift_tail(z, p, x, lo) - power_shift_tail(z, p, x, hi);
}

}  // namespace

cplx cost_weight_tail(const CostFunction& cost, cplx z, cplx w, int sign, double x,
                      uint64_t a, bool odd_only) {
  double xs = sign * x;
  auto plain = [&](cplx zz, cplx p) {
    return odd_only ? power_shift_tail_odd(zz, p, xs, a)
                    : power_shift_tail(zz, p, xs, a);
  };
  switch (cost.tail_model()) {
    case CostFunction::TailModel::ConstantWeight:
      return std::exp(w * cost.tail_constant()) * plain(z, {0.0, 0.0});
    case CostFunction::TailModel::PowerWeight:
      return plain(z, w * cost.tail_power());
    case CostFunction::TailModel::Dyadic: {
      // c(m) = floor(log2 m) + 1 is constant on dyadic blocks.
      if (w.real() >= (z.real() - 1.0) * 0.6931471805599453)
        throw std::domain_error("cost_weight_tail: dyadic tail diverges at this w");
      cplx acc{0.0, 0.0};
      int j = 0;
      while ((uint64_t(1) << (j + 1)) <= a && j < 62) ++j;
      double hi2 = std::ldexp(1.0, j + 1);
      uint64_t lo = a;
      for (; j < 900; ++j) {
        cplx zsum;
        if (hi2 <= 9e18) {
          zsum = range_sum(z, {0.0, 0.0}, xs, lo, uint64_t(hi2), odd_only);
        } else {
          // beyond uint64: continue analytically with the plain tail at lo
          zsum = odd_only ? power_shift_tail_odd(z, {0.0, 0.0}, xs, lo)
                          : power_shift_tail(z, {0.0, 0.0}, xs, lo);
          acc += std::exp(w * double(j + 1)) * zsum;
          break;
        }
        cplx term = std::exp(w * double(j + 1)) * zsum;
        acc += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
        lo = uint64_t(hi2);
        hi2 *= 2.0;
      }
      return acc;
    }
  }
  throw std::logic_error("cost_weight_tail: unknown tail model");
}

}  // namespace euclid
