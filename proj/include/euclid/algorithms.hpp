#ifndef EUCLID_ALGORITHMS_HPP
#define EUCLID_ALGORITHMS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace euclid {

// The three division rules. Standard truncates the quotient, Centered rounds
// it to the nearest integer (halves up), Odd rounds to the nearest odd
// integer (even ratios up).
enum class Algo { Standard, Centered, Odd };

Algo algo_from_string(const std::string& s);
const char* algo_name(Algo a);
char algo_tag(Algo a);

// One division step produces a digit (m, sign): v = m*u + sign*r.
struct Digit {
  uint64_t m = 0;
  int sign = +1;

  friend bool operator==(const Digit&, const Digit&) = default;
};

struct DivStep {
  Digit digit;
  uint64_t r = 0;
};

// Half-open interval the interval map acts on. lo_open/hi_open record which
// endpoint is excluded; numeric work always uses the closure [lo, hi].
struct Interval {
  double lo, hi;
  bool lo_open, hi_open;
};

Interval domain_interval(Algo a);

// sigma0 exponent of the derivative series: 1/2 for all three systems.
inline constexpr double kSigma0 = 0.5;

bool digit_admissible(Algo a, const Digit& d);
bool digit_final(Algo a, const Digit& d);

// v = m*u + sign*r with r in the rule's remainder range.
// Standard/Odd require v >= u >= 1, Centered requires v >= 2u, u >= 1.
DivStep divide(uint64_t v, uint64_t u, Algo a);

struct Expansion {
  uint64_t u = 0, v = 0;
  Algo algo = Algo::Standard;
  std::vector<Digit> digits;
  std::vector<uint64_t> remainders;  // one per step, ends in 0

  size_t depth() const { return digits.size(); }
};

// Full digit word of the run on a coprime pair. Throws std::domain_error on
// non-coprime input or a pair outside the rule's domain.
Expansion expand(uint64_t u, uint64_t v, Algo a);

struct Fraction {
  uint64_t num = 0, den = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Exact evaluation of the digit word at 0 through integer 2x2 matrix
// products. No floating point; equals u/v for a well-formed expansion.
Fraction reconstruct(const Expansion& e);

struct BranchValue {
  double value;
  double abs_derivative;
};

// Inverse branch x -> 1/(m + sign*x) and |derivative|.
BranchValue branch_eval(const Digit& d, double x);

// T(x) = |1/x - A(1/x)| with A the algorithm's rounding rule.
double interval_map(Algo a, double x);

}  // namespace euclid

#endif  // EUCLID_ALGORITHMS_HPP
