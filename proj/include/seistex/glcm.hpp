#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "seistex/grid.hpp"

namespace seistex {

/// Pixel displacement (row, col) between the two members of a co-occurring
/// pair.
struct Offset {
  int drow = 0;
  int dcol = 0;
};

/// Directional gray-level co-occurrence matrix of a quantized patch.
/// counts[i * levels + j] holds the number of pixel pairs whose first member
/// has level i and whose displaced member has level j.
struct Glcm {
  int levels = 0;
  Offset offset;
  std::vector<std::uint64_t> counts;
  std::vector<double> pmf;

  std::uint64_t count(int i, int j) const { return counts[i * levels + j]; }
  double p(int i, int j) const { return pmf[i * levels + j]; }
};

/// Haralick-style statistics of one co-occurrence pmf. Entropy and mutual
/// information use the natural log with 0 log 0 = 0.
struct GlcmAttributes {
  double contrast = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
  double homogeneity = 0.0;
  double correlation = 0.0;
  double mutual_information = 0.0;
};

inline constexpr int kGlcmDefaultLevels = 64;
inline constexpr int kGlcmAttributeCount = 6;

/// d = 1 offsets at 0, 45, 90 and 135 degrees.
inline constexpr std::array<Offset, 4> kGlcmDirections{
    {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}};

Glcm glcm(const QuantPatch& patch, Offset offset);

/// Statistics of a pmf stored row-major as levels x levels. Degenerate
/// marginals (zero spread) give correlation 0.
GlcmAttributes glcm_attributes(std::span<const double> pmf, int levels);
GlcmAttributes glcm_attributes(const Glcm& g);

/// Quantizes the patch and concatenates the six attributes over the four
/// default directions (24 values, direction-major).
FeatureHistogram glcm_feature(const Patch& patch,
                              int levels = kGlcmDefaultLevels);

}  // namespace seistex
