#include "seistex/glcm.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace seistex {

Glcm glcm(const QuantPatch& patch, Offset offset) {
  if (offset.drow == 0 && offset.dcol == 0) {
    throw std::invalid_argument("glcm: offset must be nonzero");
  }
  if (std::abs(offset.drow) >= patch.size ||
      std::abs(offset.dcol) >= patch.size) {
    throw std::invalid_argument("glcm: offset exceeds patch size");
  }
  const int k = patch.levels;
  Glcm g{k, offset, std::vector<std::uint64_t>(static_cast<std::size_t>(k) * k),
         std::vector<double>(static_cast<std::size_t>(k) * k, 0.0)};

  const int r0 = std::max(0, -offset.drow);
  const int r1 = std::min(patch.size, patch.size - offset.drow);
  const int c0 = std::max(0, -offset.dcol);
  const int c1 = std::min(patch.size, patch.size - offset.dcol);
  std::uint64_t total = 0;
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      const int i = patch.at(r, c);
      const int j = patch.at(r + offset.drow, c + offset.dcol);
      ++g.counts[static_cast<std::size_t>(i) * k + j];
      ++total;
    }
  }
  if (total > 0) {
    const double inv = 1.0 / static_cast<double>(total);
    for (std::size_t e = 0; e < g.counts.size(); ++e) {
      g.pmf[e] = static_cast<double>(g.counts[e]) * inv;
    }
  }
  return g;
}

GlcmAttributes glcm_attributes(std::span<const double> pmf, int levels) {
  const std::size_t k = static_cast<std::size_t>(levels);
  if (pmf.size() != k * k) {
    throw std::invalid_argument("glcm_attributes: pmf is not levels x levels");
  }

  // Co-occurrence matrices of small patches are sparse; visit the support
  // once and derive everything from it.
  struct Entry {
    int i;
    int j;
    double p;
  };
  std::vector<Entry> support;
  std::vector<double> row_marginal(k, 0.0);
  std::vector<double> col_marginal(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double p = pmf[i * k + j];
      if (p > 0.0) {
        support.push_back({static_cast<int>(i), static_cast<int>(j), p});
        row_marginal[i] += p;
        col_marginal[j] += p;
      }
    }
  }

  double mean_i = 0.0;
  double mean_j = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    mean_i += static_cast<double>(l) * row_marginal[l];
    mean_j += static_cast<double>(l) * col_marginal[l];
  }
  double var_i = 0.0;
  double var_j = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    var_i += (l - mean_i) * (l - mean_i) * row_marginal[l];
    var_j += (l - mean_j) * (l - mean_j) * col_marginal[l];
  }

  GlcmAttributes a;
  double entropy_sum = 0.0;
  double energy_sq = 0.0;
  double covariance = 0.0;
  for (const Entry& e : support) {
    const double d = static_cast<double>(e.i - e.j);
    a.contrast += d * d * e.p;
    entropy_sum += e.p * std::log(e.p);
    energy_sq += e.p * e.p;
    a.homogeneity += e.p / (1.0 + d * d);
    covariance += (e.i - mean_i) * (e.j - mean_j) * e.p;
    a.mutual_information +=
        e.p * std::log(e.p / (row_marginal[e.i] * col_marginal[e.j]));
  }
  a.entropy = 0.0 - entropy_sum;
  a.energy = std::sqrt(energy_sq);
  const double spread = std::sqrt(var_i) * std::sqrt(var_j);
  a.correlation = spread > 0.0 ? covariance / spread : 0.0;
  return a;
}

GlcmAttributes glcm_attributes(const Glcm& g) {
  return glcm_attributes(g.pmf, g.levels);
}

FeatureHistogram glcm_feature(const Patch& patch, int levels) {
  const QuantPatch q = quantize(patch, levels);
  FeatureHistogram out{Descriptor::glcm, {}, false};
  out.bins.reserve(kGlcmDirections.size() * kGlcmAttributeCount);
  for (const Offset& off : kGlcmDirections) {
    const GlcmAttributes a = glcm_attributes(glcm(q, off));
    out.bins.insert(out.bins.end(),
                    {a.contrast, a.entropy, a.energy, a.homogeneity,
                     a.correlation, a.mutual_information});
  }
  return out;
}

}  // namespace seistex
