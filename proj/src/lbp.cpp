#include "seistex/lbp.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace seistex {

namespace {

double snap(double v) {
  const double nearest = std::round(v);
  return std::abs(v - nearest) < 1e-9 ? nearest : v;
}

void require_fits(const Patch& patch, const RingSampler& sampler,
                  const char* who) {
  if (patch.size() <= 2 * sampler.margin() + 1) {
    throw std::invalid_argument(std::string(who) + ": patch side " +
                                std::to_string(patch.size()) +
                                " too small for radius " +
                                std::to_string(sampler.radius()));
  }
}

void require_inner_ring(double radius, const char* who) {
  if (radius < 2.0) {
    throw std::invalid_argument(std::string(who) +
                                ": radius must be >= 2 (inner ring at R-1)");
  }
}

// Patch mean relative to the first pixel. Offsets from a patch pixel are
// exact under any representable global shift, so comparisons against this
// mean are too.
double patch_mean_offset(const Patch& patch) {
  const double ref = patch.values()[0];
  double sum = 0.0;
  for (double v : patch.values()) sum += v - ref;
  return sum / static_cast<double>(patch.values().size());
}

// Neighbor-minus-center differences for every interior pixel, P per pixel.
// Working with differences keeps every code exact on constant regions.
struct RingDifferences {
  int first = 0;  // first interior row/col
  int extent = 0;  // interior side length
  int samples_count = 0;
  std::vector<double> diffs;  // [pixel][p]
  std::vector<double> centers;  // [pixel], relative to the first patch pixel

  std::size_t pixels() const { return centers.size(); }
  const double* at(std::size_t pixel) const {
    return diffs.data() + pixel * samples_count;
  }
};

RingDifferences ring_differences(const Patch& patch, const RingSampler& ring,
                                 int margin) {
  RingDifferences out;
  out.first = margin;
  out.extent = patch.size() - 2 * margin;
  out.samples_count = ring.samples_count();
  const std::size_t n = static_cast<std::size_t>(out.extent) * out.extent;
  out.diffs.resize(n * out.samples_count);
  out.centers.resize(n);
  std::size_t k = 0;
  for (int r = margin; r < patch.size() - margin; ++r) {
    for (int c = margin; c < patch.size() - margin; ++c, ++k) {
      out.centers[k] = patch.at(r, c) - patch.values()[0];
      double* d = out.diffs.data() + k * out.samples_count;
      for (int p = 0; p < out.samples_count; ++p) {
        d[p] = ring.sample_offset(patch, r, c, p);
      }
    }
  }
  return out;
}

template <typename Pred>
std::uint32_t sign_code(int samples_count, Pred&& bit) {
  std::uint32_t code = 0;
  for (int p = 0; p < samples_count; ++p) {
    if (bit(p)) code |= (std::uint32_t{1} << p);
  }
  return code;
}

// Per-pixel CLBP sign, magnitude and center labels.
struct ClbpLabels {
  std::vector<int> s;
  std::vector<int> m;
  std::vector<int> c;
};

ClbpLabels clbp_labels(const Patch& patch, const RingDifferences& rd) {
  const int P = rd.samples_count;

  double magnitude_sum = 0.0;
  for (double d : rd.diffs) magnitude_sum += std::abs(d);
  const double magnitude_threshold =
      magnitude_sum / static_cast<double>(rd.diffs.size());
  const double mean = patch_mean_offset(patch);

  ClbpLabels out;
  out.s.resize(rd.pixels());
  out.m.resize(rd.pixels());
  out.c.resize(rd.pixels());
  for (std::size_t k = 0; k < rd.pixels(); ++k) {
    const double* d = rd.at(k);
    out.s[k] = riu2(sign_code(P, [&](int p) { return d[p] >= 0.0; }), P);
    out.m[k] = riu2(sign_code(P,
                              [&](int p) {
                                return std::abs(d[p]) - magnitude_threshold >=
                                       0.0;
                              }),
                    P);
    out.c[k] = rd.centers[k] >= mean ? 1 : 0;
  }
  return out;
}

FeatureHistogram joint3(const std::vector<int>& a, const std::vector<int>& b,
                        const std::vector<int>& c, int labels,
                        Descriptor descriptor) {
  std::vector<int> joint(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    joint[k] = (a[k] * labels + b[k]) * 2 + c[k];
  }
  return histogram(joint, labels * labels * 2, descriptor);
}

}  // namespace

RingSampler::RingSampler(int samples_count, double radius) : radius_(radius) {
  if (samples_count < 1 || samples_count > 32) {
    throw std::invalid_argument("RingSampler: P must be in [1, 32]");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("RingSampler: radius must be > 0");
  }
  margin_ = static_cast<int>(std::ceil(radius - 1e-9));
  taps_.reserve(samples_count);
  for (int p = 0; p < samples_count; ++p) {
    const double angle = 2.0 * std::numbers::pi * p / samples_count;
    const double y = snap(-radius * std::sin(angle));
    const double x = snap(radius * std::cos(angle));
    const double fy = std::floor(y);
    const double fx = std::floor(x);
    taps_.push_back({static_cast<int>(fy), static_cast<int>(fx), y - fy,
                     x - fx});
  }
}

double RingSampler::sample(const Patch& patch, int r, int c, int p) const {
  return patch.at(r, c) + sample_offset(patch, r, c, p);
}

double RingSampler::sample_offset(const Patch& patch, int r, int c,
                                  int p) const {
  const Tap& t = taps_[p];
  const int r0 = r + t.drow;
  const int c0 = c + t.dcol;
  const double gc = patch.at(r, c);
  const double v00 = patch.clamped(r0, c0);
  if (t.frow == 0.0 && t.fcol == 0.0) return v00 - gc;
  const double v01 = patch.clamped(r0, c0 + 1);
  const double v10 = patch.clamped(r0 + 1, c0);
  const double v11 = patch.clamped(r0 + 1, c0 + 1);
  // Only pixel differences enter the arithmetic.
  return (v00 - gc) + t.fcol * (v01 - v00) + t.frow * (v10 - v00) +
         t.frow * t.fcol * ((v11 - v01) - (v10 - v00));
}

NeighborRing RingSampler::ring(const Patch& patch, Coord pixel) const {
  NeighborRing out{samples_count(), radius_, {}, patch.at(pixel.row, pixel.col)};
  out.samples.reserve(taps_.size());
  for (int p = 0; p < samples_count(); ++p) {
    out.samples.push_back(sample(patch, pixel.row, pixel.col, p));
  }
  return out;
}

std::uint32_t lbp_code(const NeighborRing& ring) {
  return sign_code(static_cast<int>(ring.samples.size()), [&](int p) {
    return ring.samples[p] - ring.center >= 0.0;
  });
}

int circular_transitions(std::uint32_t code, int samples_count) {
  const std::uint64_t mask = (std::uint64_t{1} << samples_count) - 1;
  const std::uint64_t v = code & mask;
  const std::uint64_t rotated =
      ((v >> 1) | ((v & 1u) << (samples_count - 1))) & mask;
  return std::popcount(v ^ rotated);
}

int riu2(std::uint32_t code, int samples_count) {
  if (circular_transitions(code, samples_count) <= 2) {
    return std::popcount(code);
  }
  return samples_count + 1;
}

FeatureHistogram lbp_feature(const Patch& patch, int samples_count,
                             double radius) {
  const RingSampler ring(samples_count, radius);
  require_fits(patch, ring, "lbp_feature");
  const RingDifferences rd = ring_differences(patch, ring, ring.margin());
  std::vector<int> labels(rd.pixels());
  for (std::size_t k = 0; k < rd.pixels(); ++k) {
    const double* d = rd.at(k);
    labels[k] = riu2(sign_code(samples_count, [&](int p) { return d[p] >= 0.0; }),
                     samples_count);
  }
  return histogram(labels, riu2_label_count(samples_count), Descriptor::lbp);
}

FeatureHistogram clbp_feature(const Patch& patch, int samples_count,
                              double radius) {
  const RingSampler ring(samples_count, radius);
  require_fits(patch, ring, "clbp_feature");
  const ClbpLabels l =
      clbp_labels(patch, ring_differences(patch, ring, ring.margin()));
  return joint3(l.s, l.m, l.c, riu2_label_count(samples_count),
                Descriptor::clbp);
}

FeatureHistogram mclbp_feature(const Patch& patch) {
  static constexpr std::pair<int, double> kScales[] = {{8, 1.0}, {16, 2.0},
                                                       {24, 3.0}};
  if (patch.size() <= 7) {
    throw std::invalid_argument("mclbp_feature: patch side must exceed 7");
  }
  FeatureHistogram out{Descriptor::mclbp, {}, false};
  out.bins.reserve(2200);
  for (const auto& [p, r] : kScales) {
    const FeatureHistogram h = clbp_feature(patch, p, r);
    for (double b : h.bins) out.bins.push_back(b / 3.0);
  }
  return out;
}

FeatureHistogram elbp_feature(const Patch& patch, int samples_count,
                              double radius) {
  require_inner_ring(radius, "elbp_feature");
  const RingSampler outer(samples_count, radius);
  const RingSampler inner(samples_count, radius - 1.0);
  require_fits(patch, outer, "elbp_feature");
  const int margin = outer.margin();
  const RingDifferences ro = ring_differences(patch, outer, margin);
  const RingDifferences ri = ring_differences(patch, inner, margin);
  const double mean = patch_mean_offset(patch);
  const int P = samples_count;

  std::vector<int> ni(ro.pixels());
  std::vector<int> rdl(ro.pixels());
  std::vector<int> ci(ro.pixels());
  for (std::size_t k = 0; k < ro.pixels(); ++k) {
    const double* d = ro.at(k);
    const double* dinner = ri.at(k);
    double ring_offset = 0.0;  // ring mean minus center
    for (int p = 0; p < P; ++p) ring_offset += d[p];
    ring_offset /= P;
    ni[k] = riu2(sign_code(P, [&](int p) { return d[p] - ring_offset >= 0.0; }),
                 P);
    rdl[k] = riu2(sign_code(P, [&](int p) { return d[p] - dinner[p] >= 0.0; }),
                  P);
    ci[k] = ro.centers[k] >= mean ? 1 : 0;
  }
  return joint3(ni, rdl, ci, riu2_label_count(P), Descriptor::elbp);
}

FeatureHistogram cldp_feature(const Patch& patch, int samples_count,
                              double radius) {
  require_inner_ring(radius, "cldp_feature");
  const RingSampler outer(samples_count, radius);
  const RingSampler inner(samples_count, radius - 1.0);
  require_fits(patch, outer, "cldp_feature");
  const int margin = outer.margin();
  const int P = samples_count;
  const int labels = riu2_label_count(P);

  const RingDifferences ro = ring_differences(patch, outer, margin);
  const ClbpLabels l = clbp_labels(patch, ro);
  const FeatureHistogram clbp = joint3(l.s, l.m, l.c, labels, Descriptor::cldp);

  const RingDifferences ri = ring_differences(patch, inner, margin);
  const double scale = radius / (radius - 1.0);
  std::vector<int> dl(ro.pixels());
  for (std::size_t k = 0; k < ro.pixels(); ++k) {
    const double* d = ro.at(k);
    const double* dinner = ri.at(k);
    dl[k] = riu2(
        sign_code(P, [&](int p) { return d[p] - dinner[p] * scale >= 0.0; }), P);
  }
  const FeatureHistogram dh = histogram(dl, labels, Descriptor::cldp);

  FeatureHistogram out{Descriptor::cldp, {}, false};
  out.bins.reserve(clbp.bins.size() + dh.bins.size());
  for (double b : clbp.bins) out.bins.push_back(0.5 * b);
  for (double b : dh.bins) out.bins.push_back(0.5 * b);
  return out;
}

}  // namespace seistex
