#include "seistex/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seistex {

namespace {

double gradient_along(const SectionGrid& g, int r, int c, bool along_cols) {
  const int n = along_cols ? g.cols() : g.rows();
  const int i = along_cols ? c : r;
  if (n < 2) return 0.0;
  const auto v = [&](int k) { return along_cols ? g.at(r, k) : g.at(k, c); };
  if (i == 0) return v(1) - v(0);
  if (i == n - 1) return v(n - 1) - v(n - 2);
  return 0.5 * (v(i + 1) - v(i - 1));
}

double gradient_energy(const PixelFeatures& f, int r, int c) {
  const double gx = f.gx.at(r, c);
  const double gy = f.gy.at(r, c);
  return gx * gx + gy * gy;
}

// Relabels 4-connected components. Fragments of at most `min_size` pixels
// are merged, smallest first, into the adjacent region nearest in the SLIC
// distance between region means; ids are then renumbered in raster order.
int enforce_connectivity(std::vector<int>& labels, const PixelFeatures& f,
                         double spatial_weight, int min_size) {
  const int rows = f.l.rows();
  const int cols = f.l.cols();
  const int n = static_cast<int>(labels.size());
  constexpr int kUnset = -1;
  std::vector<int> comp(n, kUnset);
  std::vector<int> stack;
  int comps = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] != kUnset) continue;
    comp[start] = comps;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      const int pr = p / cols;
      const int pc = p % cols;
      const int nbr[4][2] = {{pr, pc - 1}, {pr - 1, pc}, {pr, pc + 1}, {pr + 1, pc}};
      for (const auto& q : nbr) {
        if (q[0] < 0 || q[0] >= rows || q[1] < 0 || q[1] >= cols) continue;
        const int i = q[0] * cols + q[1];
        if (comp[i] == kUnset && labels[i] == labels[start]) {
          comp[i] = comps;
          stack.push_back(i);
        }
      }
    }
    ++comps;
  }

  std::vector<SlicCenter> sum(comps);
  std::vector<long> size(comps, 0);
  std::vector<std::vector<int>> adjacent(comps);
  for (int p = 0; p < n; ++p) {
    const int r = p / cols;
    const int c = p % cols;
    SlicCenter& s = sum[comp[p]];
    s.l += f.l.at(r, c);
    s.gx += f.gx.at(r, c);
    s.gy += f.gy.at(r, c);
    s.row += r;
    s.col += c;
    ++size[comp[p]];
    if (c + 1 < cols && comp[p + 1] != comp[p]) {
      adjacent[comp[p]].push_back(comp[p + 1]);
      adjacent[comp[p + 1]].push_back(comp[p]);
    }
    if (r + 1 < rows && comp[p + cols] != comp[p]) {
      adjacent[comp[p]].push_back(comp[p + cols]);
      adjacent[comp[p + cols]].push_back(comp[p]);
    }
  }

  std::vector<int> parent(comps);
  for (int k = 0; k < comps; ++k) parent[k] = k;
  const auto find = [&](int k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  const auto distance = [&](int a, int b) {
    const double ia = 1.0 / static_cast<double>(size[a]);
    const double ib = 1.0 / static_cast<double>(size[b]);
    const double dl = sum[a].l * ia - sum[b].l * ib;
    const double dgx = sum[a].gx * ia - sum[b].gx * ib;
    const double dgy = sum[a].gy * ia - sum[b].gy * ib;
    const double dr = sum[a].row * ia - sum[b].row * ib;
    const double dc = sum[a].col * ia - sum[b].col * ib;
    return dl * dl + dgx * dgx + dgy * dgy + spatial_weight * (dr * dr + dc * dc);
  };

  std::vector<int> order(comps);
  for (int k = 0; k < comps; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return size[a] < size[b]; });
  for (int k : order) {
    if (find(k) != k || size[k] > min_size) continue;
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int a : adjacent[k]) {
      const int root = find(a);
      if (root == k) continue;
      const double d = distance(k, root);
      if (d < best_d || (d == best_d && root < best)) {
        best_d = d;
        best = root;
      }
    }
    if (best < 0) continue;
    parent[k] = best;
    size[best] += size[k];
    sum[best].l += sum[k].l;
    sum[best].gx += sum[k].gx;
    sum[best].gy += sum[k].gy;
    sum[best].row += sum[k].row;
    sum[best].col += sum[k].col;
    adjacent[best].insert(adjacent[best].end(), adjacent[k].begin(),
                          adjacent[k].end());
    adjacent[k].clear();
  }

  std::vector<int> dense(comps, kUnset);
  int next = 0;
  for (int p = 0; p < n; ++p) {
    const int root = find(comp[p]);
    if (dense[root] == kUnset) dense[root] = next++;
    labels[p] = dense[root];
  }
  return next;
}

}  // namespace

PixelFeatures pixel_features(const SectionGrid& grid) {
  PixelFeatures f{grid, SectionGrid(grid.rows(), grid.cols()),
                  SectionGrid(grid.rows(), grid.cols())};
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      f.gx.at(r, c) = gradient_along(grid, r, c, true);
      f.gy.at(r, c) = gradient_along(grid, r, c, false);
    }
  }
  return f;
}

std::vector<SlicCenter> slic_seeds(const PixelFeatures& features,
                                   int region_size) {
  const int rows = features.l.rows();
  const int cols = features.l.cols();
  const int ny = std::max(1, static_cast<int>(std::lround(
                                 static_cast<double>(rows) / region_size)));
  const int nx = std::max(1, static_cast<int>(std::lround(
                                 static_cast<double>(cols) / region_size)));
  std::vector<SlicCenter> seeds;
  seeds.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < ny; ++i) {
    const int r0 = i * rows / ny;
    const int r1 = (i + 1) * rows / ny;
    for (int j = 0; j < nx; ++j) {
      const int c0 = j * cols / nx;
      const int c1 = (j + 1) * cols / nx;
      double row = 0.5 * (r0 + r1 - 1);
      double col = 0.5 * (c0 + c1 - 1);
      int pr = static_cast<int>(std::floor(row + 0.5));
      int pc = static_cast<int>(std::floor(col + 0.5));
      double best = gradient_energy(features, pr, pc);
      int br = pr;
      int bc = pc;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int rr = pr + dr;
          const int cc = pc + dc;
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
          const double e = gradient_energy(features, rr, cc);
          if (e < best) {
            best = e;
            br = rr;
            bc = cc;
          }
        }
      }
      if (br != pr || bc != pc) {
        row = br;
        col = bc;
        pr = br;
        pc = bc;
      }
      seeds.push_back({features.l.at(pr, pc), features.gx.at(pr, pc),
                       features.gy.at(pr, pc), row, col});
    }
  }
  return seeds;
}

SectionGrid SuperpixelMap::to_grid() const {
  std::vector<double> v(assignment.begin(), assignment.end());
  return SectionGrid(rows, cols, std::move(v));
}

SuperpixelMap slic_segment(const SectionGrid& grid, const SlicParams& params) {
  const int s = params.region_size;
  if (s < 4) {
    throw std::invalid_argument("slic_segment: region size must be >= 4");
  }
  if (s > grid.rows() || s > grid.cols()) {
    throw std::invalid_argument("slic_segment: region size exceeds grid");
  }
  if (params.iterations < 1 || !(params.compactness >= 0.0)) {
    throw std::invalid_argument(
        "slic_segment: need iterations >= 1 and compactness >= 0");
  }
  const int rows = grid.rows();
  const int cols = grid.cols();
  const PixelFeatures f = pixel_features(grid);
  std::vector<SlicCenter> centers = slic_seeds(f, s);
  const double spatial_weight =
      (params.compactness / s) * (params.compactness / s);

  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  std::vector<int> labels(n, -1);
  std::vector<double> dist(n);
  for (int iter = 0; iter < params.iterations; ++iter) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    bool changed = false;
    std::vector<int> next(n, -1);
    for (int k = 0; k < static_cast<int>(centers.size()); ++k) {
      const SlicCenter& ctr = centers[k];
      const int r0 = std::max(0, static_cast<int>(std::floor(ctr.row - s)));
      const int r1 = std::min(rows - 1, static_cast<int>(std::ceil(ctr.row + s)));
      const int c0 = std::max(0, static_cast<int>(std::floor(ctr.col - s)));
      const int c1 = std::min(cols - 1, static_cast<int>(std::ceil(ctr.col + s)));
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          const double dl = f.l.at(r, c) - ctr.l;
          const double dgx = f.gx.at(r, c) - ctr.gx;
          const double dgy = f.gy.at(r, c) - ctr.gy;
          const double dy = r - ctr.row;
          const double dx = c - ctr.col;
          const double d = dl * dl + dgx * dgx + dgy * dgy +
                           spatial_weight * (dx * dx + dy * dy);
          const std::size_t i = static_cast<std::size_t>(r) * cols + c;
          if (d < dist[i]) {
            dist[i] = d;
            next[i] = k;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (next[i] != labels[i]) {
        changed = true;
        break;
      }
    }
    labels = std::move(next);
    if (!changed) break;

    std::vector<SlicCenter> sums(centers.size());
    std::vector<std::size_t> counts(centers.size(), 0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int k = labels[static_cast<std::size_t>(r) * cols + c];
        if (k < 0) continue;
        SlicCenter& acc = sums[k];
        acc.l += f.l.at(r, c);
        acc.gx += f.gx.at(r, c);
        acc.gy += f.gy.at(r, c);
        acc.row += r;
        acc.col += c;
        ++counts[k];
      }
    }
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (counts[k] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[k]);
      centers[k] = {sums[k].l * inv, sums[k].gx * inv, sums[k].gy * inv,
                    sums[k].row * inv, sums[k].col * inv};
    }
  }

  SuperpixelMap map;
  map.rows = rows;
  map.cols = cols;
  map.count = enforce_connectivity(labels, f, spatial_weight, (s * s) / 4);
  map.assignment = std::move(labels);
  map.centroids = superpixel_centroids(map);
  return map;
}

std::vector<Coord> superpixel_centroids(const SuperpixelMap& map) {
  std::vector<double> sum_r(map.count, 0.0);
  std::vector<double> sum_c(map.count, 0.0);
  std::vector<std::size_t> counts(map.count, 0);
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      const int k = map.id(r, c);
      sum_r[k] += r;
      sum_c[k] += c;
      ++counts[k];
    }
  }
  std::vector<Coord> out(map.count);
  for (int k = 0; k < map.count; ++k) {
    if (counts[k] == 0) {
      throw std::invalid_argument("superpixel_centroids: empty superpixel");
    }
    const double inv = 1.0 / static_cast<double>(counts[k]);
    out[k] = {static_cast<int>(std::lround(sum_r[k] * inv)),
              static_cast<int>(std::lround(sum_c[k] * inv))};
  }
  return out;
}

}  // namespace seistex
