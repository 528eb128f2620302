#include "ssmud/bisection.hpp"

#include <cmath>
#include <string>

#include "ssmud/error.hpp"

namespace ssmud::numerics {

BisectionResult bisect_root(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("bisect_root: tol must be positive");
  if (!(lo < hi)) throw DomainError("bisect_root: need lo < hi");
  const double gLo = g(lo);
  const double gHi = g(hi);
  if (std::isnan(gLo) || std::isnan(gHi)) {
    throw DomainError("bisect_root: g is NaN at a bracket end");
  }
  if (gLo == 0.0) return {lo, lo, lo, 0};
  if (gHi == 0.0) return {hi, hi, hi, 0};
  if (std::signbit(gLo) == std::signbit(gHi)) {
    throw BracketError("bisect_root: no sign change, g(lo)=" + std::to_string(gLo) +
                           " g(hi)=" + std::to_string(gHi),
                       gLo, gHi);
  }
  const bool increasing = gLo < 0.0;
  BisectionResult r{0.0, lo, hi, 0};
  while (r.hi - r.lo > tol) {
    const double mid = 0.5 * (r.lo + r.hi);
    if (mid <= r.lo || mid >= r.hi) break;
    const double gm = g(mid);
    ++r.iterations;
    if (gm == 0.0) {
      r.lo = r.hi = mid;
      break;
    }
    if ((gm < 0.0) == increasing) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }
  r.root = 0.5 * (r.lo + r.hi);
  return r;
}

}  // namespace ssmud::numerics
