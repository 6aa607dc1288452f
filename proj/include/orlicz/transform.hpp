#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

// Bijection of the integer atoms, given as a shift rule or an explicit
// table on a window with a declared off-window rule. With Reject, atoms
// outside the table are an error to evaluate (the map is only materialized
// there); with ExtendByShift(s) the map is i -> i + s off the window, and
// construction proves global bijectivity (values must equal keys + s as
// sets, so the table's image exactly plugs the hole the off-window shift
// leaves).
class AtomTransformation {
 public:
  enum class OffWindow { Reject, ExtendByShift };

  static AtomTransformation shift(long step);
  static AtomTransformation table(const std::map<long, long>& forward,
                                  OffWindow off_window, long off_step = 0);

  long forward(long i) const;   // phi(i)
  long backward(long i) const;  // phi^{-1}(i)
  long iterate(long i, long n) const;  // phi^n(i), n may be negative

  bool is_shift() const { return table_.empty(); }
  long step() const { return step_; }  // shift step; off_step for tables
  OffWindow off_window() const { return off_window_; }
  // Table key range, when a table is present.
  std::optional<std::pair<long, long>> table_window() const;

 private:
  AtomTransformation() = default;

  long step_ = 0;
  OffWindow off_window_ = OffWindow::ExtendByShift;
  std::map<long, long> table_;    // forward
  std::map<long, long> inverse_;  // value -> key
};

}  // namespace orlicz
