#include "orlicz/transform.hpp"

#include <set>
#include <string>

namespace orlicz {

AtomTransformation AtomTransformation::shift(long step) {
  AtomTransformation t;
  t.step_ = step;
  return t;
}

AtomTransformation AtomTransformation::table(const std::map<long, long>& forward,
                                             OffWindow off_window,
                                             long off_step) {
  if (forward.empty())
    throw std::invalid_argument("transform: empty table");
  AtomTransformation t;
  t.off_window_ = off_window;
  t.step_ = off_window == OffWindow::ExtendByShift ? off_step : 0;
  std::set<long> keys, values, shifted_keys;
  for (const auto& [k, v] : forward) {
    keys.insert(k);
    if (!values.insert(v).second)
      throw std::invalid_argument("transform: table is not injective (value " +
                                  std::to_string(v) + " repeats)");
    if (off_window == OffWindow::ExtendByShift) shifted_keys.insert(k + off_step);
  }
  if (off_window == OffWindow::Reject) {
    // phi is materialized only on the keys; it must permute them.
    if (values != keys)
      throw std::invalid_argument(
          "transform: reject table must be a permutation of its keys");
  } else {
    // Off-window atoms map by i -> i + s, with image Z minus (keys + s);
    // the table must fill exactly that hole for phi to biject Z.
    if (values != shifted_keys)
      throw std::invalid_argument(
          "transform: extend-by-shift table values must equal keys + step "
          "as a set");
  }
  t.table_ = forward;
  for (const auto& [k, v] : forward) t.inverse_[v] = k;
  return t;
}

long AtomTransformation::forward(long i) const {
  if (table_.empty()) return i + step_;
  const auto it = table_.find(i);
  if (it != table_.end()) return it->second;
  if (off_window_ == OffWindow::Reject)
    throw std::out_of_range("transform: atom " + std::to_string(i) +
                            " escapes the table window");
  return i + step_;
}

long AtomTransformation::backward(long i) const {
  if (table_.empty()) return i - step_;
  const auto it = inverse_.find(i);
  if (it != inverse_.end()) return it->second;
  if (off_window_ == OffWindow::Reject)
    throw std::out_of_range("transform: atom " + std::to_string(i) +
                            " escapes the table window");
  return i - step_;
}

long AtomTransformation::iterate(long i, long n) const {
  if (table_.empty()) return i + n * step_;
  long x = i;
  for (long k = 0; k < n; ++k) x = forward(x);
  for (long k = 0; k > n; --k) x = backward(x);
  return x;
}

std::optional<std::pair<long, long>> AtomTransformation::table_window() const {
  if (table_.empty()) return std::nullopt;
  return std::make_pair(table_.begin()->first, table_.rbegin()->first);
}

}  // namespace orlicz
