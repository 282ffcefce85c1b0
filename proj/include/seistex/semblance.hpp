#pragma once

#include <span>

#include "seistex/grid.hpp"

namespace seistex {

/// Half extents of a semblance analysis window: the window covers
/// 2 * samples + 1 time samples (rows) by 2 * traces + 1 traces (columns).
struct HalfWindow {
  int samples = 1;
  int traces = 1;
};

inline constexpr int kSemblanceBins = 32;

/// Zero-dip semblance of one window stored row-major as samples x traces:
///   S = sum_t (sum_j a[t][j])^2 / (J * sum_t sum_j a[t][j]^2).
/// An all-zero window is fully coherent (S = 1).
double semblance_coefficient(std::span<const double> window, int samples,
                             int traces);

/// Per-pixel semblance over a sliding window with edge replication.
SectionGrid semblance_map(const SectionGrid& grid, HalfWindow half = {});

/// 32-bin histogram of semblance values over [0, 1].
FeatureHistogram semblance_feature(const Patch& semblance_patch);

}  // namespace seistex
