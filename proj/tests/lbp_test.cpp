#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "seistex/lbp.hpp"

namespace seistex {
namespace {

NeighborRing make_ring(std::vector<double> samples, double center) {
  NeighborRing ring;
  ring.samples_count = static_cast<int>(samples.size());
  ring.radius = 1.0;
  ring.samples = std::move(samples);
  ring.center = center;
  return ring;
}

Patch random_patch(int size, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Patch p(size);
  for (double& v : p.values()) v = u(rng);
  return p;
}

std::uint32_t rotate(std::uint32_t code, int k, int p) {
  const std::uint32_t mask = (p == 32) ? ~0u : ((1u << p) - 1);
  k %= p;
  if (k == 0) return code;
  return ((code << k) | (code >> (p - k))) & mask;
}

TEST(LbpCodeTest, WorkedCodes) {
  EXPECT_EQ(lbp_code(make_ring(std::vector<double>(8, 0.5), 0.5)), 255u);
  EXPECT_EQ(lbp_code(make_ring({1, 1, 1, 1, 0, 0, 0, 0}, 0.5)), 15u);
  EXPECT_EQ(lbp_code(make_ring(std::vector<double>(16, 0.1), 0.5)), 0u);
  EXPECT_EQ(lbp_code(make_ring(std::vector<double>(16, 0.5), 0.5)), 65535u);
}

TEST(Riu2Test, WorkedLabels) {
  EXPECT_EQ(riu2(15, 8), 4);
  EXPECT_EQ(riu2(0, 8), 0);
  EXPECT_EQ(riu2(255, 8), 8);
  EXPECT_EQ(riu2(0b01010101, 8), 9);
  EXPECT_EQ(circular_transitions(0b01010101, 8), 8);
  EXPECT_EQ(circular_transitions(0b10000001, 8), 2);
}

TEST(Riu2Test, LabelCountsAndRotationInvariance) {
  for (int p : {8, 16}) {
    std::set<int> labels;
    for (std::uint32_t code = 0; code < (1u << p); ++code) {
      const int l = riu2(code, p);
      labels.insert(l);
      ASSERT_EQ(l, riu2(rotate(code, 1 + code % (p - 1), p), p));
    }
    EXPECT_EQ(static_cast<int>(labels.size()), riu2_label_count(p));
    EXPECT_EQ(*labels.rbegin(), p + 1);
  }
  EXPECT_EQ(riu2_label_count(8), 10);
  EXPECT_EQ(riu2_label_count(16), 18);
}

TEST(Riu2Test, BruteForceRotationClassesForEightSamples) {
  // Orbits of 8-bit codes under circular rotation.
  std::set<std::uint32_t> reps;
  for (std::uint32_t code = 0; code < 256; ++code) {
    std::uint32_t m = code;
    for (int k = 1; k < 8; ++k) m = std::min(m, rotate(code, k, 8));
    reps.insert(m);
  }
  EXPECT_EQ(reps.size(), 36u);
  // Uniform orbits map to distinct labels 0..8, the rest share label 9.
  std::set<int> uniform_labels;
  int nonuniform = 0;
  for (std::uint32_t r : reps) {
    if (circular_transitions(r, 8) <= 2) {
      uniform_labels.insert(riu2(r, 8));
    } else {
      ++nonuniform;
      EXPECT_EQ(riu2(r, 8), 9);
    }
  }
  EXPECT_EQ(uniform_labels.size(), 9u);
  EXPECT_EQ(nonuniform, 27);
}

TEST(RingSamplerTest, AxisSamplesHitPixels) {
  Patch p(7);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) p.at(r, c) = 10 * r + c;
  const NeighborRing ring = RingSampler(4, 2.0).ring(p, {3, 3});
  ASSERT_EQ(ring.samples.size(), 4u);
  EXPECT_DOUBLE_EQ(ring.samples[0], p.at(3, 5));  // right
  EXPECT_DOUBLE_EQ(ring.samples[1], p.at(1, 3));  // up
  EXPECT_DOUBLE_EQ(ring.samples[2], p.at(3, 1));  // left
  EXPECT_DOUBLE_EQ(ring.samples[3], p.at(5, 3));  // down
  EXPECT_EQ(ring.center, p.at(3, 3));
}

TEST(RingSamplerTest, BilinearOnLinearFieldIsExact) {
  Patch p(9);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) p.at(r, c) = 0.3 * r - 0.2 * c + 1.0;
  const RingSampler s(16, 2.0);
  const NeighborRing ring = s.ring(p, {4, 4});
  for (int k = 0; k < 16; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 16;
    const double row = 4 - 2.0 * std::sin(a);
    const double col = 4 + 2.0 * std::cos(a);
    EXPECT_NEAR(ring.samples[k], 0.3 * row - 0.2 * col + 1.0, 1e-12);
  }
}

TEST(LbpFeatureTest, BinCounts) {
  std::mt19937 rng(3);
  const Patch p = random_patch(33, rng);
  EXPECT_EQ(lbp_feature(p).bins.size(), 18u);
  EXPECT_EQ(clbp_feature(p).bins.size(), 648u);
  EXPECT_EQ(mclbp_feature(p).bins.size(), 2200u);
  EXPECT_EQ(elbp_feature(p).bins.size(), 648u);
  EXPECT_EQ(cldp_feature(p).bins.size(), 666u);
  EXPECT_EQ(lbp_feature(p, 8, 1.0).bins.size(), 10u);
}

TEST(LbpFeatureTest, ConstantPatchOneHots) {
  Patch p(21);
  for (double& v : p.values()) v = 0.42;
  const auto lbp = lbp_feature(p).bins;
  for (int b = 0; b < 18; ++b) EXPECT_EQ(lbp[b], b == 16 ? 1.0 : 0.0);
  // s = 16 (all >= 0), m = 16 (|0| - 0 >= 0), c = 1 (center == mean).
  const auto clbp = clbp_feature(p).bins;
  const int hot = (16 * 18 + 16) * 2 + 1;
  for (int b = 0; b < 648; ++b) EXPECT_EQ(clbp[b], b == hot ? 1.0 : 0.0);
  for (const auto& f : {mclbp_feature(p), elbp_feature(p), cldp_feature(p)}) {
    double sum = 0;
    int nonzero = 0;
    for (double v : f.bins) {
      sum += v;
      nonzero += v != 0.0;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_LE(nonzero, 3);
  }
}

TEST(LbpFeatureTest, SumsToOneAndShiftInvariant) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Patch p = random_patch(25, rng);
    Patch q = p;
    // Binary fractions keep the shifted differences exact.
    for (double& v : q.values()) v += 0.25;
    for (auto fn : {+[](const Patch& x) { return lbp_feature(x); },
                    +[](const Patch& x) { return clbp_feature(x); },
                    +[](const Patch& x) { return mclbp_feature(x); },
                    +[](const Patch& x) { return elbp_feature(x); },
                    +[](const Patch& x) { return cldp_feature(x); }}) {
      const auto a = fn(p).bins;
      const auto b = fn(q).bins;
      EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 1.0, 1e-12);
      EXPECT_EQ(a, b);
    }
  }
}

TEST(LbpFeatureTest, LbpIsSignMarginalOfClbp) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Patch p = random_patch(19, rng);
    const auto lbp = lbp_feature(p).bins;
    const auto clbp = clbp_feature(p).bins;
    for (int s = 0; s < 18; ++s) {
      double marginal = 0;
      for (int m = 0; m < 18; ++m)
        for (int c = 0; c < 2; ++c) marginal += clbp[(s * 18 + m) * 2 + c];
      EXPECT_NEAR(marginal, lbp[s], 1e-12);
    }
  }
}

TEST(LbpFeatureTest, RotationByQuarterTurnOnAxisRing) {
  // With P = 4, R = 1 the ring lies on pixels, so rotating the patch by 90
  // degrees rotates every code and leaves riu2 labels unchanged.
  std::mt19937 rng(13);
  const Patch p = random_patch(15, rng);
  Patch rot(15);
  for (int r = 0; r < 15; ++r)
    for (int c = 0; c < 15; ++c) rot.at(r, c) = p.at(c, 14 - r);
  EXPECT_EQ(lbp_feature(p, 4, 1.0).bins, lbp_feature(rot, 4, 1.0).bins);
}

TEST(LbpFeatureTest, Errors) {
  std::mt19937 rng(1);
  const Patch small = random_patch(5, rng);
  EXPECT_THROW(lbp_feature(small), std::invalid_argument);
  EXPECT_THROW(mclbp_feature(random_patch(7, rng)), std::invalid_argument);
  const Patch ok = random_patch(15, rng);
  EXPECT_THROW(elbp_feature(ok, 8, 1.0), std::invalid_argument);
  EXPECT_THROW(cldp_feature(ok, 8, 1.0), std::invalid_argument);
  EXPECT_THROW(RingSampler(0, 1.0), std::invalid_argument);
  EXPECT_THROW(RingSampler(8, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace seistex
