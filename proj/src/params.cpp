#include "pabp/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pabp {

Params make_params(int m, double delta) {
  if (m < 1) {
    throw std::invalid_argument("m must be a positive integer, got " + std::to_string(m));
  }
  if (!std::isfinite(delta) || delta <= -static_cast<double>(m)) {
    throw std::invalid_argument("delta must satisfy delta > -m, got delta=" +
                                std::to_string(delta) + " with m=" + std::to_string(m));
  }
  Params p;
  p.m = m;
  p.delta = delta;
  p.gamma = static_cast<double>(m) / (2.0 * m + delta);
  return p;
}

}  // namespace pabp
