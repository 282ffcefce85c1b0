#include "seistex/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seistex {

SectionGrid::SectionGrid(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("SectionGrid: rows and cols must be >= 1");
  }
  values_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

SectionGrid::SectionGrid(int rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("SectionGrid: rows and cols must be >= 1");
  }
  if (values_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("SectionGrid: value count != rows * cols");
  }
}

double SectionGrid::clamped(int r, int c) const {
  return at(std::clamp(r, 0, rows_ - 1), std::clamp(c, 0, cols_ - 1));
}

Patch::Patch(int size, Coord center) : size_(size), center_(center) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("Patch: size must be odd and positive");
  }
  values_.assign(static_cast<std::size_t>(size) * size, 0.0);
}

Patch::Patch(int size, std::vector<double> values, Coord center)
    : size_(size), center_(center), values_(std::move(values)) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("Patch: size must be odd and positive");
  }
  if (values_.size() != static_cast<std::size_t>(size) * size) {
    throw std::invalid_argument("Patch: value count != size * size");
  }
}

double Patch::clamped(int r, int c) const {
  return at(std::clamp(r, 0, size_ - 1), std::clamp(c, 0, size_ - 1));
}

Patch Patch::transposed() const {
  Patch out(size_, center_);
  for (int r = 0; r < size_; ++r) {
    for (int c = 0; c < size_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

SectionGrid normalize_section(const SectionGrid& grid) {
  const auto values = grid.values();
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / n);

  SectionGrid out(grid.rows(), grid.cols(), 0.5);
  // The mean of equal values need not round back to that value, so a
  // constant grid is detected directly rather than through stddev.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (values.empty() || *lo == *hi || !(stddev > 0.0)) return out;
  auto dst = out.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double z = std::clamp((values[i] - mean) / stddev, -3.0, 3.0);
    dst[i] = (z + 3.0) / 6.0;
  }
  return out;
}

QuantPatch quantize(const Patch& patch, int levels) {
  if (levels < 2) {
    throw std::invalid_argument("quantize: levels must be >= 2");
  }
  QuantPatch q{patch.size(), levels, {}};
  q.codes.reserve(patch.values().size());
  for (double v : patch.values()) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    const int code = static_cast<int>(std::floor(clamped * levels));
    q.codes.push_back(std::min(code, levels - 1));
  }
  return q;
}

Patch extract_patch(const SectionGrid& grid, Coord center, int size) {
  if (!grid.contains(center)) {
    throw std::invalid_argument("extract_patch: center outside grid");
  }
  Patch out(size, center);
  const int h = size / 2;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      out.at(r, c) = grid.clamped(center.row - h + r, center.col - h + c);
    }
  }
  return out;
}

double gaussian_weight(double dist2, double sigma) {
  return std::exp(-dist2 / (2.0 * sigma * sigma));
}

Patch gaussian_window(const Patch& patch, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_window: sigma must be > 0");
  }
  const int n = patch.size();
  const int h = patch.half();
  // The kernel is separable; precompute the 1D factors once.
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) {
    const double d = i - h;
    axis[i] = gaussian_weight(d * d, sigma);
  }
  Patch out(n, patch.center());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out.at(r, c) = patch.at(r, c) * (axis[r] * axis[c]);
    }
  }
  return out;
}

FeatureHistogram histogram(std::span<const int> codes, int bin_count,
                           Descriptor descriptor) {
  if (bin_count < 1) {
    throw std::invalid_argument("histogram: bin_count must be >= 1");
  }
  FeatureHistogram h{descriptor, std::vector<double>(bin_count, 0.0), false};
  if (codes.empty()) {
    h.empty_input = true;
    return h;
  }
  std::vector<std::size_t> counts(bin_count, 0);
  for (int code : codes) {
    if (code < 0 || code >= bin_count) {
      throw std::invalid_argument("histogram: code " + std::to_string(code) +
                                  " outside [0, " + std::to_string(bin_count) +
                                  ")");
    }
    ++counts[code];
  }
  const double total = static_cast<double>(codes.size());
  for (int b = 0; b < bin_count; ++b) h.bins[b] = counts[b] / total;
  return h;
}

}  // namespace seistex
