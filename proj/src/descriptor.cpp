#include "seistex/descriptor.hpp"

#include <array>
#include <stdexcept>

#include "seistex/glcm.hpp"
#include "seistex/lbp.hpp"

namespace seistex {

namespace {

constexpr std::array<Descriptor, 8> kAll{
    Descriptor::glcm, Descriptor::semblance, Descriptor::lbp,
    Descriptor::clbp, Descriptor::mclbp,     Descriptor::elbp,
    Descriptor::cldp, Descriptor::lri};

}  // namespace

std::string descriptor_name(Descriptor d) {
  switch (d) {
    case Descriptor::glcm: return "glcm";
    case Descriptor::semblance: return "semblance";
    case Descriptor::lbp: return "lbp";
    case Descriptor::clbp: return "clbp";
    case Descriptor::mclbp: return "mclbp";
    case Descriptor::elbp: return "elbp";
    case Descriptor::cldp: return "cldp";
    case Descriptor::lri: return "lri";
  }
  throw std::invalid_argument("unknown descriptor");
}

Descriptor parse_descriptor(const std::string& name) {
  for (Descriptor d : kAll) {
    if (descriptor_name(d) == name) return d;
  }
  throw std::invalid_argument("unknown descriptor '" + name +
                              "' (expected glcm, semblance, lbp, clbp, mclbp, "
                              "elbp, cldp or lri)");
}

std::span<const Descriptor> all_descriptors() { return kAll; }

std::size_t feature_dim(Descriptor descriptor, const FeatureOptions& opts) {
  switch (descriptor) {
    case Descriptor::glcm: return kGlcmDirections.size() * kGlcmAttributeCount;
    case Descriptor::semblance: return kSemblanceBins;
    case Descriptor::lbp: return 18;
    case Descriptor::clbp: return 18 * 18 * 2;
    case Descriptor::mclbp: return 10 * 10 * 2 + 18 * 18 * 2 + 26 * 26 * 2;
    case Descriptor::elbp: return 18 * 18 * 2;
    case Descriptor::cldp: return 18 * 18 * 2 + 18;
    case Descriptor::lri:
      return static_cast<std::size_t>(2 * opts.lri.max_run + 1) *
             kLriDirections.size();
  }
  throw std::invalid_argument("unknown descriptor");
}

FeatureHistogram extract_features(Descriptor descriptor, const Patch& raw,
                                  const FeatureOptions& opts) {
  if (descriptor == Descriptor::semblance) {
    Patch centered = raw;
    for (double& v : centered.values()) v -= 0.5;
    const Patch windowed = gaussian_window(centered, opts.sigma);
    const SectionGrid as_grid(windowed.size(), windowed.size(),
                              std::vector<double>(windowed.values().begin(),
                                                  windowed.values().end()));
    const SectionGrid s = semblance_map(as_grid, opts.semblance_window);
    return semblance_feature(Patch(
        raw.size(), std::vector<double>(s.values().begin(), s.values().end()),
        raw.center()));
  }

  const Patch windowed = gaussian_window(raw, opts.sigma);
  switch (descriptor) {
    case Descriptor::glcm: return glcm_feature(windowed, opts.glcm_levels);
    case Descriptor::lbp: return lbp_feature(windowed);
    case Descriptor::clbp: return clbp_feature(windowed);
    case Descriptor::mclbp: return mclbp_feature(windowed);
    case Descriptor::elbp: return elbp_feature(windowed);
    case Descriptor::cldp: return cldp_feature(windowed);
    case Descriptor::lri: return lri_feature(windowed, opts.lri);
    case Descriptor::semblance: break;
  }
  throw std::invalid_argument("unknown descriptor");
}

double chi_square_distance(const FeatureHistogram& h,
                           const FeatureHistogram& g) {
  if (h.bins.size() != g.bins.size()) {
    throw std::invalid_argument("chi_square_distance: dimension mismatch");
  }
  double d = 0.0;
  for (std::size_t b = 0; b < h.bins.size(); ++b) {
    const double diff = h.bins[b] - g.bins[b];
    d += diff * diff / (h.bins[b] + g.bins[b] + 1e-12);
  }
  return d;
}

}  // namespace seistex
