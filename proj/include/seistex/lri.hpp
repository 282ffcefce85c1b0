#pragma once

#include <array>

#include "seistex/grid.hpp"

namespace seistex {

/// Eight compass directions as (row, col) steps, in histogram order
/// E, NE, N, NW, W, SW, S, SE.
inline constexpr std::array<Coord, 8> kLriDirections{{{0, 1},
                                                      {-1, 1},
                                                      {-1, 0},
                                                      {-1, -1},
                                                      {0, -1},
                                                      {1, -1},
                                                      {1, 0},
                                                      {1, 1}}};

struct LriConfig {
  double threshold_factor = 0.5;  // T = factor * patch std
  int max_run = 3;                // K
};

/// Signed edge-distance code of one pixel along direction `direction`
/// (an index into kLriDirections). Zero when the first neighbor is within
/// `threshold` of the pixel; otherwise the length of the run of neighbors
/// lying beyond the threshold on the same side as the first one, capped at
/// `max_run`, negative when that side is below. Samples beyond the patch
/// border are edge-replicated.
int lri_a_code(const Patch& patch, Coord pixel, int direction,
               double threshold, int max_run);

/// Per-direction histograms of LRI-A codes over pixels at least K from the
/// border, 2K + 1 bins each, concatenated over the 8 directions (56 bins
/// with the defaults). Each direction carries 1/8 of the mass.
FeatureHistogram lri_feature(const Patch& patch, const LriConfig& cfg = {});

}  // namespace seistex
