#include "hdw/weighting/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace hdw::weighting {

WeightPair normalize(WeightPair w) {
  for (double& v : w) v = std::max(v, 0.0);
  const double sum = w[0] + w[1];
  if (!(sum > 0.0) || !std::isfinite(sum)) return kUniform;
  return {w[0] / sum, w[1] / sum};
}

bool on_simplex(const WeightPair& w, double tol) {
  return w[0] >= 0.0 && w[1] >= 0.0 && std::abs(w[0] + w[1] - 1.0) <= tol;
}

}  // namespace hdw::weighting
