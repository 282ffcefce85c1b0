#pragma once

#include <cstdint>
#include <vector>

#include "seistex/grid.hpp"

namespace seistex {

/// P samples on a circle of radius R around a center pixel, read
/// counterclockwise starting from the sample directly to the right.
struct NeighborRing {
  int samples_count = 0;
  double radius = 0.0;
  std::vector<double> samples;
  double center = 0.0;
};

/// Precomputed bilinear taps for a (P, R) circular neighborhood. Off-grid
/// positions are interpolated; positions within 1e-9 of a pixel are snapped.
class RingSampler {
 public:
  RingSampler(int samples_count, double radius);

  int samples_count() const { return static_cast<int>(taps_.size()); }
  double radius() const { return radius_; }
  /// Pixels at least this far from every border have in-bounds taps.
  int margin() const { return margin_; }

  /// Interpolated value of sample p around (r, c). Reads are clamped to the
  /// patch, so border pixels see replicated edges.
  double sample(const Patch& patch, int r, int c, int p) const;
  /// sample() minus the center value, computed from pixel differences only
  /// so that it is unchanged by any exactly representable global shift.
  double sample_offset(const Patch& patch, int r, int c, int p) const;

  NeighborRing ring(const Patch& patch, Coord pixel) const;

 private:
  struct Tap {
    int drow;
    int dcol;
    double frow;
    double fcol;
  };
  double radius_;
  int margin_;
  std::vector<Tap> taps_;
};

/// sum_p s(g_p - g_c) 2^p with s(x) = 1 for x >= 0.
std::uint32_t lbp_code(const NeighborRing& ring);

/// Number of 0/1 transitions when the P-bit code is traversed circularly.
int circular_transitions(std::uint32_t code, int samples_count);

/// Rotation-invariant uniform label: popcount for codes with at most two
/// circular transitions, P + 1 otherwise. Labels lie in [0, P + 1].
int riu2(std::uint32_t code, int samples_count);

/// Number of riu2 labels for P samples (P + 2).
constexpr int riu2_label_count(int samples_count) { return samples_count + 2; }

/// Histogram of riu2 LBP labels over interior pixels; P + 2 bins.
FeatureHistogram lbp_feature(const Patch& patch, int samples_count = 16,
                             double radius = 2.0);

/// Joint sign/magnitude/center histogram, (P + 2) * (P + 2) * 2 bins with
/// index (s * (P + 2) + m) * 2 + c.
FeatureHistogram clbp_feature(const Patch& patch, int samples_count = 16,
                              double radius = 2.0);

/// CLBP at (8, 1), (16, 2), (24, 3), concatenated with each scale weighted
/// 1/3; 2200 bins.
FeatureHistogram mclbp_feature(const Patch& patch);

/// Joint neighbor-intensity / radial-difference / center histogram,
/// (P + 2) * (P + 2) * 2 bins with index (ni * (P + 2) + rd) * 2 + ci.
/// Requires R >= 2 so that the inner ring at R - 1 exists.
FeatureHistogram elbp_feature(const Patch& patch, int samples_count = 16,
                              double radius = 2.0);

/// CLBP joint histogram followed by the (P + 2)-bin radial sign-difference
/// histogram, each half of the total mass. Requires R >= 2.
FeatureHistogram cldp_feature(const Patch& patch, int samples_count = 16,
                              double radius = 2.0);

}  // namespace seistex
