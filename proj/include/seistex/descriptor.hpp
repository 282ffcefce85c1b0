#pragma once

#include <cstddef>

#include "seistex/grid.hpp"
#include "seistex/lri.hpp"
#include "seistex/semblance.hpp"

namespace seistex {

struct FeatureOptions {
  double sigma = 25.0;     // Gaussian window applied before every descriptor
  int glcm_levels = 64;
  HalfWindow semblance_window{1, 1};
  LriConfig lri{};
};

/// Length of the attribute vector produced by `descriptor` with the default
/// (P, R) settings and the given options.
std::size_t feature_dim(Descriptor descriptor, const FeatureOptions& opts = {});

/// Smallest odd patch side every descriptor accepts.
inline constexpr int kMinPatchSize = 9;

/// Gaussian-windows a raw amplitude patch (values in [0, 1]) and computes
/// the requested descriptor on it. For semblance, amplitudes are first
/// centered on 0.5 so the coherence measure sees signed traces; the window
/// is then applied and the patch's own semblance map is histogrammed.
FeatureHistogram extract_features(Descriptor descriptor, const Patch& raw,
                                  const FeatureOptions& opts = {});

/// Chi-square distance sum_b (h_b - g_b)^2 / (h_b + g_b + 1e-12).
double chi_square_distance(const FeatureHistogram& h, const FeatureHistogram& g);

}  // namespace seistex
