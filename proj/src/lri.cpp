#include "seistex/lri.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace seistex {

int lri_a_code(const Patch& patch, Coord pixel, int direction,
               double threshold, int max_run) {
  if (direction < 0 || direction >= static_cast<int>(kLriDirections.size())) {
    throw std::invalid_argument("lri_a_code: direction out of range");
  }
  const Coord step = kLriDirections[direction];
  const double x = patch.at(pixel.row, pixel.col);
  const auto neighbor = [&](int j) {
    return patch.clamped(pixel.row + j * step.row, pixel.col + j * step.col) -
           x;
  };
  const double first = neighbor(1);
  if (std::abs(first) <= threshold) return 0;
  const bool above = first > threshold;
  int run = 1;
  while (run < max_run) {
    const double d = neighbor(run + 1);
    if (above ? !(d > threshold) : !(d < -threshold)) break;
    ++run;
  }
  return above ? run : -run;
}

FeatureHistogram lri_feature(const Patch& patch, const LriConfig& cfg) {
  const int k = cfg.max_run;
  if (k < 1 || !(cfg.threshold_factor > 0.0)) {
    throw std::invalid_argument("lri_feature: need K >= 1 and T factor > 0");
  }
  if (patch.size() <= 2 * k + 1) {
    throw std::invalid_argument("lri_feature: patch side must exceed 2K + 1");
  }

  // Moments of offsets from the first pixel: unchanged by a global shift.
  const auto values = patch.values();
  const double ref = values[0];
  double mean = 0.0;
  for (double v : values) mean += v - ref;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - ref - mean) * (v - ref - mean);
  const double threshold =
      cfg.threshold_factor * std::sqrt(var / static_cast<double>(values.size()));

  const int bins_per_direction = 2 * k + 1;
  const int directions = static_cast<int>(kLriDirections.size());
  std::vector<std::size_t> counts(
      static_cast<std::size_t>(bins_per_direction) * directions, 0);
  std::size_t pixels = 0;
  for (int r = k; r < patch.size() - k; ++r) {
    for (int c = k; c < patch.size() - k; ++c, ++pixels) {
      for (int d = 0; d < directions; ++d) {
        const int code = lri_a_code(patch, {r, c}, d, threshold, k);
        ++counts[static_cast<std::size_t>(d) * bins_per_direction + code + k];
      }
    }
  }

  FeatureHistogram out{Descriptor::lri,
                       std::vector<double>(counts.size(), 0.0), false};
  const double scale = 1.0 / (static_cast<double>(pixels) * directions);
  for (std::size_t b = 0; b < counts.size(); ++b) {
    out.bins[b] = static_cast<double>(counts[b]) * scale;
  }
  return out;
}

}  // namespace seistex
