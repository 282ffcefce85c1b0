#include "seistex/semblance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace seistex {

double semblance_coefficient(std::span<const double> window, int samples,
                             int traces) {
  if (samples < 1 || traces < 1 ||
      window.size() != static_cast<std::size_t>(samples) * traces) {
    throw std::invalid_argument("semblance_coefficient: bad window shape");
  }
  double stacked = 0.0;
  double energy = 0.0;
  for (int t = 0; t < samples; ++t) {
    double sum = 0.0;
    for (int j = 0; j < traces; ++j) {
      const double a = window[static_cast<std::size_t>(t) * traces + j];
      sum += a;
      energy += a * a;
    }
    stacked += sum * sum;
  }
  if (!(energy > 0.0)) return 1.0;
  // Rounding can push the ratio a hair past 1 for perfectly coherent input.
  return std::min(1.0, stacked / (traces * energy));
}

SectionGrid semblance_map(const SectionGrid& grid, HalfWindow half) {
  if (half.samples < 0 || half.traces < 0) {
    throw std::invalid_argument("semblance_map: negative half window");
  }
  const int samples = 2 * half.samples + 1;
  const int traces = 2 * half.traces + 1;
  SectionGrid out(grid.rows(), grid.cols());
  std::vector<double> window(static_cast<std::size_t>(samples) * traces);
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      std::size_t k = 0;
      for (int t = -half.samples; t <= half.samples; ++t) {
        for (int j = -half.traces; j <= half.traces; ++j) {
          window[k++] = grid.clamped(r + t, c + j);
        }
      }
      out.at(r, c) = semblance_coefficient(window, samples, traces);
    }
  }
  return out;
}

FeatureHistogram semblance_feature(const Patch& semblance_patch) {
  std::vector<int> codes;
  codes.reserve(semblance_patch.values().size());
  for (double s : semblance_patch.values()) {
    const double v = std::clamp(s, 0.0, 1.0);
    codes.push_back(std::min(static_cast<int>(std::floor(v * kSemblanceBins)),
                             kSemblanceBins - 1));
  }
  return histogram(codes, kSemblanceBins, Descriptor::semblance);
}

}  // namespace seistex
