#ifndef EUCLID_COST_HPP
#define EUCLID_COST_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "euclid/algorithms.hpp"

namespace euclid {

// Additive digit costs. Besides evaluation, a cost carries the metadata the
// numeric layers need: lattice structure (if any), the exponent g with
// exp(w*c(m)) ~ m^(w*g) controlling the convergence window, and a tail model
// so operator truncation tails can be summed in closed form.
class CostFunction {
 public:
  enum class Kind { Unit, LogQuotient, BinaryLength, Indicator, Table };

  // Tail behaviour of exp(w*c(m, sign)) for large m.
  enum class TailModel {
    ConstantWeight,  // c constant beyond small m (unit, indicator, table tails)
    PowerWeight,     // c = k * ln m  => weight m^(w k)
    Dyadic           // c = floor(log2 m) + 1, constant on dyadic blocks
  };

  struct Lattice {
    double width;   // L_c
    double offset;  // L_0
  };

  static CostFunction unit();
  static CostFunction log_quotient();
  static CostFunction binary_length();
  static CostFunction indicator(Digit q0);
  // c = scale * log_quotient; used for homogeneity checks.
  static CostFunction scaled_log_quotient(double scale);
  // "m sign value" lines plus one "default <unit|logq|binlen|zero>" line.
  static CostFunction from_file(const std::string& path);

  double operator()(uint64_t m, int sign) const;
  double operator()(const Digit& d) const { return (*this)(d.m, d.sign); }

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  bool integer_valued() const { return integer_valued_; }
  const std::optional<Lattice>& lattice() const { return lattice_; }
  double growth_exponent() const { return growth_exponent_; }
  // Default Re(w) ceiling of the moderate-growth window near sigma = 1.
  double w_window() const { return w_window_; }

  TailModel tail_model() const { return tail_model_; }
  double tail_power() const { return tail_power_; }        // PowerWeight k
  double tail_constant() const { return tail_constant_; }  // ConstantWeight c
  // Largest m whose cost deviates from the tail model (0 if none).
  uint64_t exceptional_m() const { return exceptional_m_; }

  double total(const Expansion& e) const;

 private:
  CostFunction() = default;

  std::string name_;
  Kind kind_ = Kind::Unit;
  bool integer_valued_ = true;
  std::optional<Lattice> lattice_;
  double growth_exponent_ = 0.0;
  double w_window_ = 0.0;
  TailModel tail_model_ = TailModel::ConstantWeight;
  double tail_power_ = 0.0;
  double tail_constant_ = 0.0;
  uint64_t exceptional_m_ = 0;
  double scale_ = 1.0;
  Digit indicator_q_{1, +1};
  std::map<std::pair<uint64_t, int>, double> table_;
  Kind table_default_ = Kind::Unit;
};

struct GrowthProbe {
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  bool converges = false;
};

// Truncated series sum(exp(w c(h)) |h'|^sigma) at the supremum point of |h'|
// over the interval, with an integral-comparison tail. Divergence is reported
// through the flag, not thrown.
GrowthProbe moderate_growth_probe(const CostFunction& c, double sigma, double w,
                                  Algo a, uint64_t M);

}  // namespace euclid

#endif  // EUCLID_COST_HPP
