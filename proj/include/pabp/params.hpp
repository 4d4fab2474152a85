#pragma once

namespace pabp {

/// Model parameters: each new vertex throws m edges, attachment weight is
/// degree + delta. gamma = m / (2m + delta) lies in (0, 1) whenever
/// delta > -m; it governs degree growth and the critical exponent.
struct Params {
  int m = 1;
  double delta = 0.0;
  double gamma = 0.5;
};

/// Validates m >= 1 and delta > -m and fills in gamma.
/// Throws std::invalid_argument otherwise.
Params make_params(int m, double delta);

}  // namespace pabp
