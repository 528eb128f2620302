#include "ssmud/quadrature.hpp"

namespace ssmud::numerics {

void QuadratureSettings::validate() const {
  if (!(absTol > 0.0) || !(relTol > 0.0)) {
    throw DomainError("QuadratureSettings: tolerances must be positive");
  }
  if (maxDepth < 1) throw DomainError("QuadratureSettings: maxDepth must be >= 1");
  if (maxIntervals < 2) throw DomainError("QuadratureSettings: maxIntervals must be >= 2");
}

}  // namespace ssmud::numerics
