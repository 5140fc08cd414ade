#include "euclid/algorithms.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace euclid {

Algo algo_from_string(const std::string& s) {
  if (s == "g" || s == "G" || s == "standard") return Algo::Standard;
  if (s == "k" || s == "K" || s == "centered") return Algo::Centered;
  if (s == "o" || s == "O" || s == "odd") return Algo::Odd;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected g, k or o)");
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Standard: return "standard";
    case Algo::Centered: return "centered";
    case Algo::Odd: return "odd";
  }
  return "?";
}

char algo_tag(Algo a) {
  switch (a) {
    case Algo::Standard: return 'g';
    case Algo::Centered: return 'k';
    case Algo::Odd: return 'o';
  }
  return '?';
}

Interval domain_interval(Algo a) {
  switch (a) {
    case Algo::Standard: return {0.0, 1.0, true, true};
    case Algo::Centered: return {0.0, 0.5, true, false};
    case Algo::Odd: return {0.0, 1.0, false, false};
  }
  return {0.0, 1.0, true, true};
}

bool digit_admissible(Algo a, const Digit& d) {
  if (d.m == 0 || (d.sign != 1 && d.sign != -1)) return false;
  switch (a) {
    case Algo::Standard:
      return d.sign == +1 && d.m >= 1;
    case Algo::Centered:
      return (d.sign == +1 && d.m >= 2) || (d.sign == -1 && d.m >= 3);
    case Algo::Odd:
      if (d.m % 2 == 0) return false;
      return !(d.m == 1 && d.sign == -1);
  }
  return false;
}

bool digit_final(Algo a, const Digit& d) {
  if (!digit_admissible(a, d) || d.sign != +1) return false;
  switch (a) {
    case Algo::Standard:
    case Algo::Centered:
      return d.m >= 2;
    case Algo::Odd:
      return true;  // any odd m >= 1
  }
  return false;
}

DivStep divide(uint64_t v, uint64_t u, Algo a) {
  if (u == 0) throw std::domain_error("divide: u must be positive");
  if (v > (uint64_t(1) << 62)) throw std::domain_error("divide: v too large");
  uint64_t m;
  switch (a) {
    case Algo::Standard: {
      if (v < u) throw std::domain_error("divide: standard rule needs v >= u");
      m = v / u;
      return {{m, +1}, v - m * u};
    }
    case Algo::Centered: {
      if (v < 2 * u) throw std::domain_error("divide: centered rule needs v >= 2u");
      // floor(v/u + 1/2); half-integer ratios round the quotient up so the
      // signed remainder stays in [-u/2, u/2).
      m = (2 * v + u) / (2 * u);
      break;
    }
    case Algo::Odd: {
      if (v < u) throw std::domain_error("divide: odd rule needs v >= u");
      // nearest odd integer to v/u; exact even ratios round up.
      m = 2 * (v / (2 * u)) + 1;
      break;
    }
  }
  int64_t s = int64_t(v) - int64_t(m * u);
  if (s >= 0) return {{m, +1}, uint64_t(s)};
  return {{m, -1}, uint64_t(-s)};
}

Expansion expand(uint64_t u, uint64_t v, Algo a) {
  if (u == 0 || v == 0) throw std::domain_error("expand: pair must be positive");
  if (u > v) throw std::domain_error("expand: requires u <= v");
  if (a == Algo::Centered && 2 * u > v)
    throw std::domain_error("expand: centered rule needs 2u <= v");
  if (std::gcd(u, v) != 1)
    throw std::domain_error("expand: pair is not coprime");

  Expansion e;
  e.u = u;
  e.v = v;
  e.algo = a;
  uint64_t big = v, small = u;
  while (true) {
    DivStep step = divide(big, small, a);
    e.digits.push_back(step.digit);
    e.remainders.push_back(step.r);
    if (step.r == 0) break;
    big = small;
    small = step.r;
  }
  return e;
}

Fraction reconstruct(const Expansion& e) {
  // Accumulate the Moebius matrices [[0,1],[sign,m]]; the word value at 0 is
  // b/d for the product [[a,b],[c,d]].
  __int128 pa = 1, pb = 0, pc = 0, pd = 1;
  const __int128 guard = (__int128(1) << 120);
  for (const Digit& d : e.digits) {
    __int128 qa = 0, qb = 1, qc = d.sign, qd = __int128(d.m);
    __int128 na = pa * qa + pb * qc;
    __int128 nb = pa * qb + pb * qd;
    __int128 nc = pc * qa + pd * qc;
    __int128 nd = pc * qb + pd * qd;
    pa = na; pb = nb; pc = nc; pd = nd;
    if (nb > guard || nb < -guard || nd > guard || nd < -guard)
      throw std::overflow_error("reconstruct: continuant overflow");
  }
  __int128 num = pb, den = pd;
  if (den < 0) { num = -num; den = -den; }
  if (num < 0 || den == 0)
    throw std::domain_error("reconstruct: malformed expansion");
  return {uint64_t(num), uint64_t(den)};
}

BranchValue branch_eval(const Digit& d, double x) {
  double base = double(d.m) + d.sign * x;
  if (!(base > 0.0))
    throw std::domain_error("branch_eval: m + sign*x must be positive");
  double value = 1.0 / base;
  return {value, value * value};
}

double interval_map(Algo a, double x) {
  Interval dom = domain_interval(a);
  if (!(x >= dom.lo && x <= dom.hi))
    throw std::domain_error("interval_map: x outside the domain interval");
  if (x == 0.0) return 0.0;
  double y = 1.0 / x;
  double A;
  switch (a) {
    case Algo::Standard: A = std::floor(y); break;
    case Algo::Centered: A = std::floor(y + 0.5); break;
    case Algo::Odd: A = 2.0 * std::floor(0.5 * y) + 1.0; break;
    default: A = std::floor(y);
  }
  return std::fabs(y - A);
}

}  // namespace euclid
