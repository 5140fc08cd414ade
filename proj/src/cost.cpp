#include "euclid/cost.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace euclid {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

CostFunction CostFunction::unit() {
  CostFunction c;
  c.name_ = "unit";
  c.kind_ = Kind::Unit;
  c.integer_valued_ = true;
  c.lattice_ = Lattice{1.0, 0.0};
  c.growth_exponent_ = 0.0;
  c.w_window_ = 64.0;
  c.tail_model_ = TailModel::ConstantWeight;
  c.tail_constant_ = 1.0;
  return c;
}

CostFunction CostFunction::log_quotient() {
  CostFunction c;
  c.name_ = "logq";
  c.kind_ = Kind::LogQuotient;
  c.integer_valued_ = false;
  c.growth_exponent_ = 1.0;
  c.w_window_ = 0.5;
  c.tail_model_ = TailModel::PowerWeight;
  c.tail_power_ = 1.0;
  return c;
}

CostFunction CostFunction::binary_length() {
  CostFunction c;
  c.name_ = "binlen";
  c.kind_ = Kind::BinaryLength;
  c.integer_valued_ = true;
  c.lattice_ = Lattice{1.0, 0.0};
  c.growth_exponent_ = 1.0 / kLn2;
  c.w_window_ = 0.3;
  c.tail_model_ = TailModel::Dyadic;
  return c;
}

CostFunction CostFunction::indicator(Digit q0) {
  CostFunction c;
  std::ostringstream os;
  os << "ind:" << q0.m << (q0.sign < 0 ? "-" : "+");
  c.name_ = os.str();
  c.kind_ = Kind::Indicator;
  c.integer_valued_ = true;
  c.lattice_ = Lattice{1.0, 0.0};
  c.growth_exponent_ = 0.0;
  c.w_window_ = 64.0;
  c.tail_model_ = TailModel::ConstantWeight;
  c.tail_constant_ = 0.0;
  c.exceptional_m_ = q0.m;
  c.indicator_q_ = q0;
  return c;
}

CostFunction CostFunction::scaled_log_quotient(double scale) {
  CostFunction c = log_quotient();
  c.name_ = "logq*" + std::to_string(scale);
  c.scale_ = scale;
  c.w_window_ = 0.5 / scale;
  c.tail_power_ = scale;
  return c;
}

CostFunction CostFunction::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cost file not readable: " + path);
  CostFunction c;
  c.name_ = "table:" + path;
  c.kind_ = Kind::Table;
  bool saw_default = false;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (first == "default") {
      std::string base;
      if (!(ls >> base))
        throw std::runtime_error("cost file: 'default' needs a rule name");
      if (base == "unit") c.table_default_ = Kind::Unit;
      else if (base == "logq") c.table_default_ = Kind::LogQuotient;
      else if (base == "binlen") c.table_default_ = Kind::BinaryLength;
      else if (base == "zero") c.table_default_ = Kind::Indicator;  // c == 0 default
      else throw std::runtime_error("cost file: unknown default rule '" + base + "'");
      saw_default = true;
      continue;
    }
    uint64_t m = std::stoull(first);
    int sign;
    double value;
    if (!(ls >> sign >> value) || (sign != 1 && sign != -1) || value < 0.0)
      throw std::runtime_error("cost file: bad line " + std::to_string(lineno));
    c.table_[{m, sign}] = value;
    c.exceptional_m_ = std::max(c.exceptional_m_, m);
  }
  if (!saw_default)
    throw std::runtime_error("cost file: missing 'default <rule>' line");
  c.integer_valued_ = false;
  switch (c.table_default_) {
    case Kind::Unit:
      c.growth_exponent_ = 0.0; c.w_window_ = 64.0;
      c.tail_model_ = TailModel::ConstantWeight; c.tail_constant_ = 1.0;
      break;
    case Kind::LogQuotient:
      c.growth_exponent_ = 1.0; c.w_window_ = 0.5;
      c.tail_model_ = TailModel::PowerWeight; c.tail_power_ = 1.0;
      break;
    case Kind::BinaryLength:
      c.growth_exponent_ = 1.0 / kLn2; c.w_window_ = 0.3;
      c.tail_model_ = TailModel::Dyadic;
      break;
    case Kind::Indicator:
      c.growth_exponent_ = 0.0; c.w_window_ = 64.0;
      c.tail_model_ = TailModel::ConstantWeight; c.tail_constant_ = 0.0;
      break;
    default: break;
  }
  return c;
}

double CostFunction::operator()(uint64_t m, int sign) const {
  if (m == 0) throw std::domain_error("cost: m must be positive");
  switch (kind_) {
    case Kind::Unit: return 1.0;
    case Kind::LogQuotient: return scale_ * std::log(double(m));
    case Kind::BinaryLength: return double(std::bit_width(m));
    case Kind::Indicator:
      return (m == indicator_q_.m && sign == indicator_q_.sign) ? 1.0 : 0.0;
    case Kind::Table: {
      auto it = table_.find({m, sign});
      if (it != table_.end()) return it->second;
      switch (table_default_) {
        case Kind::Unit: return 1.0;
        case Kind::LogQuotient: return std::log(double(m));
        case Kind::BinaryLength: return double(std::bit_width(m));
        default: return 0.0;
      }
    }
  }
  return 0.0;
}

double CostFunction::total(const Expansion& e) const {
  double s = 0.0;
  for (const Digit& d : e.digits) s += (*this)(d);
  return s;
}

GrowthProbe moderate_growth_probe(const CostFunction& c, double sigma, double w,
                                  Algo a, uint64_t M) {
  if (M < 2) throw std::invalid_argument("moderate_growth_probe: M >= 2");
  GrowthProbe probe;
  double g = c.growth_exponent();
  double exponent = 2.0 * sigma - (w > 0.0 ? w * g : 0.0);
  probe.converges = exponent > 1.0;

  Interval dom = domain_interval(a);
  auto family_sum = [&](int sign, uint64_t m_min, bool odd_only) {
    // sup over the closure of |h'| = (m + sign*x)^(-2): at x=0 for sign=+1,
    // at the right endpoint for sign=-1.
    double xstar = sign > 0 ? 0.0 : dom.hi;
    double s = 0.0;
    for (uint64_t m = m_min; m <= M; ++m) {
      if (odd_only && m % 2 == 0) continue;
      Digit d{m, sign};
      if (!digit_admissible(a, d)) continue;
      s += std::exp(w * c(m, sign)) * std::pow(double(m) + sign * xstar, -2.0 * sigma);
    }
    return s;
  };
  auto family_tail = [&](int sign, bool odd_only) {
    if (!probe.converges) return 0.0;
    // integral comparison: terms decrease, so the tail beyond M is at most
    // integral_M^inf exp(w c~(t)) (t + sign*xstar)^(-2 sigma) dt with the
    // smooth growth model c~(t) <= g * ln t + O(1).
    double xstar = sign > 0 ? 0.0 : -dom.hi;
    double amp = (g == 0.0) ? std::exp(std::max(w, 0.0) * c(M, sign)) : 1.0;
    if (c.tail_model() == CostFunction::TailModel::Dyadic)
      amp = std::exp(std::max(w, 0.0));  // exp(w) * m^(w/ln2) envelope
    double p = exponent;
    double lo = double(M) + xstar;
    double integral = amp * std::pow(lo, 1.0 - p) / (p - 1.0);
    return odd_only ? integral : integral;
  };

  switch (a) {
    case Algo::Standard:
      probe.partial_sum = family_sum(+1, 1, false);
      probe.tail_bound = family_tail(+1, false);
      break;
    case Algo::Centered:
      probe.partial_sum = family_sum(+1, 2, false) + family_sum(-1, 3, false);
      probe.tail_bound = family_tail(+1, false) + family_tail(-1, false);
      break;
    case Algo::Odd:
      probe.partial_sum = family_sum(+1, 1, true) + family_sum(-1, 3, true);
      probe.tail_bound = 0.5 * (family_tail(+1, true) + family_tail(-1, true));
      break;
  }
  if (!probe.converges) probe.tail_bound = std::numeric_limits<double>::infinity();
  return probe;
}

}  // namespace euclid
