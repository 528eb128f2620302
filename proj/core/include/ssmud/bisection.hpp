#pragma once

#include <functional>

namespace ssmud::numerics {

struct BisectionResult {
  double root = 0.0;  // midpoint of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

// Bisection on a bracketing interval: g(lo) and g(hi) must differ in sign
// (a zero at either end is returned immediately). Stops once hi - lo <= tol,
// which takes at most ceil(log2((hi - lo) / tol)) halvings. Throws
// BracketError carrying g(lo), g(hi) when there is no sign change.
BisectionResult bisect_root(const std::function<double(double)>& g, double lo, double hi, double tol);

}  // namespace ssmud::numerics
