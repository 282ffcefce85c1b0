#pragma once

#include <vector>

#include "seistex/grid.hpp"

namespace seistex {

struct SlicParams {
  int region_size = 25;       // S: nominal superpixel side in pixels
  double compactness = 0.5;   // m: weight of the spatial term
  int iterations = 10;
};

/// Per-pixel clustering features [l, gx, gy] of a normalized section.
/// Gradients are central differences, one-sided on the borders.
struct PixelFeatures {
  SectionGrid l;
  SectionGrid gx;
  SectionGrid gy;
};

PixelFeatures pixel_features(const SectionGrid& grid);

/// Cluster center in the joint feature/position space.
struct SlicCenter {
  double l = 0.0;
  double gx = 0.0;
  double gy = 0.0;
  double row = 0.0;
  double col = 0.0;
};

/// Initial centers: one per cell of a regular grid with pitch close to S,
/// placed at the cell center and moved to the lowest-gradient pixel of its
/// 3x3 neighborhood when that is strictly lower than the center pixel.
std::vector<SlicCenter> slic_seeds(const PixelFeatures& features,
                                   int region_size);

struct SuperpixelMap {
  int rows = 0;
  int cols = 0;
  int count = 0;
  std::vector<int> assignment;  // row-major superpixel id per pixel
  std::vector<Coord> centroids;

  int id(int r, int c) const {
    return assignment[static_cast<std::size_t>(r) * cols + c];
  }
  /// Superpixel ids as a grid, for SGRID export.
  SectionGrid to_grid() const;
};

/// Modified SLIC: local k-means on [l, gx, gy, row, col] with distance
/// sqrt(d_feat^2 + (m / S)^2 d_xy^2), each center searching a 2S x 2S
/// window. Afterwards every 4-connected fragment smaller than S^2 / 4 is
/// merged into a neighboring superpixel and ids are renumbered densely, so
/// every superpixel is 4-connected.
SuperpixelMap slic_segment(const SectionGrid& grid, const SlicParams& params = {});

/// Integer-rounded mean (row, col) of each superpixel.
std::vector<Coord> superpixel_centroids(const SuperpixelMap& map);

}  // namespace seistex
