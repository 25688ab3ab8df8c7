#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "hyperplan/formula.hpp"

namespace hyperplan {

/// Either -inf or a nonnegative step count, with x + (-inf) = -inf and max{x, -inf} = x.
class HorizonValue {
 public:
  static HorizonValue neg_infinity() { return HorizonValue(); }
  static HorizonValue finite(int n) { return HorizonValue(n); }

  bool is_finite() const { return n_ >= 0; }
  int value() const { return n_; }
  /// Number of actions to synthesize: the value, or 0 for -inf.
  int steps() const { return n_ < 0 ? 0 : n_; }

  HorizonValue operator+(int k) const { return is_finite() ? HorizonValue(n_ + k) : *this; }
  friend HorizonValue max(HorizonValue a, HorizonValue b) { return a.n_ >= b.n_ ? a : b; }
  bool operator==(const HorizonValue&) const = default;

 private:
  HorizonValue() = default;
  explicit HorizonValue(int n) : n_(n) {}
  int n_ = -1;
};

std::ostream& operator<<(std::ostream& os, HorizonValue h);

using HorizonMap = std::map<std::string, HorizonValue, std::less<>>;

/// Required horizon of `pv`. Throws Error(UnboundedOperator) on an until without bound.
HorizonValue horizon(const CoreFormula& f, std::string_view pv);
HorizonValue horizon(const CoreFormula& f, int node, std::string_view pv);

/// Horizon of every prefix variable.
HorizonMap horizons(const CoreFormula& f);

}  // namespace hyperplan
