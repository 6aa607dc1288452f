#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

// Declared continuation of a weight table beyond its materialized window.
// Models are verified against the outer segment of the window at
// construction; Geometric and Periodic tails admit exact extrapolation,
// the monotone models only certify limit statements (the limit itself is
// the declared, trusted part: "increasing" means increases to infinity
// outward, "decreasing" means decreases to zero).
struct TailModel {
  enum class Kind {
    None,
    MonotoneIncreasing,
    MonotoneDecreasing,
    Geometric,  // w(i -/+ stride) = ratios[res(i)] * w(i) outward
    Periodic,   // w repeats with the given period beyond the window
  };

  Kind kind = Kind::None;
  long stride = 1;              // Geometric: residue stride q >= 1
  std::vector<double> ratios;   // Geometric: outward ratio per residue mod q
  long period = 1;              // Periodic

  static TailModel none();
  static TailModel monotone_increasing();
  static TailModel monotone_decreasing();
  static TailModel geometric(double ratio);  // stride 1
  static TailModel geometric_residues(std::vector<double> ratios);
  static TailModel periodic(long period);

  bool extrapolates() const {
    return kind == Kind::Geometric || kind == Kind::Periodic;
  }
  std::string describe() const;
};

// Purely atomic sigma-finite measure space on integer-labeled atoms.
// Weight rules: closed-form families (exact for every index) or an explicit
// table on a window with declared tails. All construction-time validation
// throws std::invalid_argument.
class AtomicMeasureSpace {
 public:
  enum class Rule { Geometric, TwoSidedExp, Table };

  // w(i) = r^i on the materialized window [lo, hi].
  static AtomicMeasureSpace geometric(double r, long lo, long hi);
  // w(i) = base^{|i|}; window must contain 0.
  static AtomicMeasureSpace two_sided_exp(double base, long lo, long hi);
  // Explicit weights for every index of a contiguous window, plus declared
  // tails (verified on the outer quarter of the window).
  static AtomicMeasureSpace table(const std::map<long, double>& weights,
                                  TailModel left, TailModel right);

  Rule rule() const { return rule_; }
  double rule_param() const { return param_; }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  bool in_window(long i) const { return i >= lo_ && i <= hi_; }

  // True when weight(i) is defined for every integer i (closed-form rules
  // and tables whose relevant tail extrapolates).
  bool weight_available(long i) const;
  double weight(long i) const;      // throws std::out_of_range if unavailable
  double log_weight(long i) const;  // overflow-safe form

  // Exact global rules allow classifiers to trust ratios at every index,
  // not only beyond the window.
  bool rule_exact() const { return rule_ != Rule::Table; }

  const TailModel& tail_left() const { return tail_left_; }
  const TailModel& tail_right() const { return tail_right_; }

  double set_measure(const std::vector<long>& atoms) const;
  std::vector<long> window_atoms() const;

 private:
  AtomicMeasureSpace() = default;
  void verify_tails() const;

  Rule rule_ = Rule::Geometric;
  double param_ = 0.5;
  long lo_ = 0, hi_ = 0;
  std::map<long, double> weights_;
  TailModel tail_left_, tail_right_;
};

// Finitely supported function: atom index -> nonzero coefficient.
class SimpleFunction {
 public:
  SimpleFunction() = default;
  explicit SimpleFunction(std::map<long, double> coeffs);
  static SimpleFunction indicator(const std::vector<long>& atoms);

  double at(long i) const;
  void set(long i, double value);  // value 0 erases
  bool empty() const { return coeffs_.empty(); }
  size_t support_size() const { return coeffs_.size(); }
  std::vector<long> support() const;
  double max_abs() const;

  SimpleFunction scaled(double alpha) const;
  SimpleFunction plus(const SimpleFunction& g) const;
  SimpleFunction minus(const SimpleFunction& g) const;

  const std::map<long, double>& coefficients() const { return coeffs_; }

 private:
  std::map<long, double> coeffs_;
};

}  // namespace orlicz
