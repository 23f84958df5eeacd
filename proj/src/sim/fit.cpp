#include <cmath>

#include "costlab/sim/simulator.hpp"

namespace costlab::sim {

double fit_scaling_exponent(
    const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 3)
    throw InvalidInputError("fit_scaling_exponent: need at least 3 points");
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [scale, measure] : series) {
    if (!(scale > 0.0) || !(measure > 0.0))
      throw InvalidInputError("fit_scaling_exponent: values must be positive");
    mean_x += std::log(scale);
    mean_y += std::log(measure);
  }
  mean_x /= static_cast<double>(series.size());
  mean_y /= static_cast<double>(series.size());

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [scale, measure] : series) {
    const double dx = std::log(scale) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(measure) - mean_y);
  }
  if (sxx == 0.0)
    throw InvalidInputError("fit_scaling_exponent: scales must differ");
  return sxy / sxx;
}

}  // namespace costlab::sim
