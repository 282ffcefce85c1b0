#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "seistex/grid.hpp"

namespace seistex {
namespace {

SectionGrid ramp_grid(int rows, int cols) {
  SectionGrid g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) g.at(r, c) = r * cols + c;
  }
  return g;
}

TEST(NormalizeSectionTest, ConstantGridMapsToHalf) {
  const SectionGrid out = normalize_section(SectionGrid(4, 6, 7.3));
  for (double v : out.values()) EXPECT_EQ(v, 0.5);
}

TEST(NormalizeSectionTest, PlusMinusOneMapsToThirds) {
  const SectionGrid out =
      normalize_section(SectionGrid(2, 2, std::vector<double>{-1, 1, 1, -1}));
  EXPECT_NEAR(out.at(0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(out.at(0, 1), 2.0 / 3.0, 1e-15);
}

TEST(NormalizeSectionTest, OutputInUnitIntervalAndMeanNearHalf) {
  std::mt19937 rng(7);
  std::exponential_distribution<double> skewed(1.0);
  std::normal_distribution<double> normal(3.0, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    SectionGrid g(17, 23);
    for (double& v : g.values()) {
      v = trial % 2 == 0 ? skewed(rng) : normal(rng);
    }
    // Occasional heavy outliers to exercise the clip.
    if (trial % 5 == 0) g.at(3, 3) = 1e4;
    const SectionGrid out = normalize_section(g);
    double mean = 0.0;
    for (double v : out.values()) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
      mean += v;
    }
    mean /= static_cast<double>(out.size());
    worst = std::max(worst, std::abs(mean - 0.5));
  }
  EXPECT_LE(worst, 0.17);
}

TEST(NormalizeSectionTest, IdempotentWithoutClipping) {
  const SectionGrid once = normalize_section(ramp_grid(9, 11));
  const SectionGrid twice = normalize_section(once);
  for (std::size_t i = 0; i < once.size(); ++i) {
    EXPECT_NEAR(once.values()[i], twice.values()[i], 1e-6);
  }
}

TEST(QuantizeTest, WorkedValues) {
  const Patch p(3, std::vector<double>{0.0, 1.0, 0.5, 0.25, 0.999, 0.5, 0, 0, 0});
  const QuantPatch q64 = quantize(p, 64);
  EXPECT_EQ(q64.at(0, 0), 0);
  EXPECT_EQ(q64.at(0, 1), 63);
  EXPECT_EQ(q64.at(1, 0), 16);
  EXPECT_EQ(quantize(p, 2).at(0, 2), 1);
}

TEST(QuantizeTest, MonotoneAndBounded) {
  std::vector<double> v(49);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i / 48.0;
  const QuantPatch q = quantize(Patch(7, v), 5);
  for (std::size_t i = 1; i < q.codes.size(); ++i) {
    EXPECT_LE(q.codes[i - 1], q.codes[i]);
    EXPECT_LT(q.codes[i], 5);
  }
}

TEST(QuantizeTest, RejectsSingleLevel) {
  EXPECT_THROW(quantize(Patch(3), 1), std::invalid_argument);
}

TEST(ExtractPatchTest, InteriorBlockVerbatim) {
  const SectionGrid g = ramp_grid(5, 5);
  const Patch p = extract_patch(g, {2, 2}, 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(p.at(r, c), g.at(r + 1, c + 1));
  }
}

TEST(ExtractPatchTest, CornerReplicatesEdges) {
  const SectionGrid g = ramp_grid(5, 5);
  const Patch p = extract_patch(g, {0, 0}, 3);
  const std::vector<double> expected{0, 0, 1, 0, 0, 1, 5, 5, 6};
  EXPECT_EQ(std::vector<double>(p.values().begin(), p.values().end()), expected);
}

TEST(ExtractPatchTest, FullGridAndCenterValue) {
  const SectionGrid g = ramp_grid(5, 5);
  const Patch p = extract_patch(g, {2, 2}, 5);
  EXPECT_TRUE(std::equal(p.values().begin(), p.values().end(),
                         g.values().begin()));
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      const Patch q = extract_patch(g, {r, c}, 7);
      EXPECT_EQ(q.at(3, 3), g.at(r, c));
    }
  }
}

TEST(ExtractPatchTest, Errors) {
  const SectionGrid g = ramp_grid(5, 5);
  EXPECT_THROW(extract_patch(g, {5, 0}, 3), std::invalid_argument);
  EXPECT_THROW(extract_patch(g, {0, -1}, 3), std::invalid_argument);
  EXPECT_THROW(extract_patch(g, {2, 2}, 4), std::invalid_argument);
}

TEST(GaussianWindowTest, CenterUnchangedAndKernelValues) {
  Patch p(99);
  for (double& v : p.values()) v = 1.0;
  p.at(49, 49) = 0.37;
  const Patch w = gaussian_window(p, 25.0);
  EXPECT_EQ(w.at(49, 49), 0.37);
  // Distance 25 along a row: exp(-0.5).
  EXPECT_NEAR(w.at(49, 74), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(w.at(49, 74), 0.6065, 1e-4);
  // Corner: exp(-(49^2 + 49^2) / 1250).
  EXPECT_NEAR(w.at(0, 0), std::exp(-4802.0 / 1250.0), 1e-15);
  EXPECT_NEAR(w.at(0, 0), 0.0215, 1e-4);
}

TEST(GaussianWindowTest, CommutesWithTranspose) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Patch p(15);
  for (double& v : p.values()) v = u(rng);
  const Patch a = gaussian_window(p.transposed(), 4.0);
  const Patch b = gaussian_window(p, 4.0).transposed();
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    EXPECT_EQ(a.values()[i], b.values()[i]);
  }
}

TEST(GaussianWindowTest, RejectsNonPositiveSigma) {
  EXPECT_THROW(gaussian_window(Patch(3), 0.0), std::invalid_argument);
  EXPECT_THROW(gaussian_window(Patch(3), -1.0), std::invalid_argument);
}

TEST(HistogramTest, WorkedExamples) {
  EXPECT_EQ(histogram(std::vector<int>{0, 0, 1, 1}, 2).bins,
            (std::vector<double>{0.5, 0.5}));
  const auto one_hot = histogram(std::vector<int>(7, 3), 10).bins;
  for (int b = 0; b < 10; ++b) EXPECT_EQ(one_hot[b], b == 3 ? 1.0 : 0.0);
  const auto h = histogram(std::vector<int>{0, 1, 2, 2, 2}, 3).bins;
  EXPECT_DOUBLE_EQ(h[0], 0.2);
  EXPECT_DOUBLE_EQ(h[1], 0.2);
  EXPECT_DOUBLE_EQ(h[2], 0.6);
}

TEST(HistogramTest, CountsAreExactFractions) {
  // bin_b * total recovers the integer count exactly, so the bins are the
  // rationals count_b / total and sum to exactly one.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    const int bins = 1 + static_cast<int>(rng() % 6);
    std::vector<int> codes(n);
    std::vector<int> counts(bins, 0);
    for (int& c : codes) {
      c = static_cast<int>(rng() % bins);
      ++counts[c];
    }
    const auto h = histogram(codes, bins).bins;
    long total = 0;
    for (int b = 0; b < bins; ++b) {
      const double scaled = h[b] * n;
      EXPECT_EQ(std::lround(scaled), counts[b]);
      EXPECT_NEAR(scaled, counts[b], 1e-9);
      total += std::lround(scaled);
    }
    EXPECT_EQ(total, n);
  }
}

TEST(HistogramTest, OutOfRangeAndEmpty) {
  EXPECT_THROW(histogram(std::vector<int>{0, 2}, 2), std::invalid_argument);
  EXPECT_THROW(histogram(std::vector<int>{-1}, 2), std::invalid_argument);
  const FeatureHistogram e = histogram(std::vector<int>{}, 4);
  EXPECT_TRUE(e.empty_input);
  EXPECT_EQ(e.bins, std::vector<double>(4, 0.0));
}

TEST(SgridTest, BitExactRoundTrip) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<float> u(-1e3f, 1e3f);
  SectionGrid g(13, 7);
  for (double& v : g.values()) v = u(rng);
  g.at(0, 0) = -0.0f;
  const auto bytes = encode_sgrid(g);
  const std::string header = "SGRID 1 13 7\n";
  ASSERT_GE(bytes.size(), header.size());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + header.size()), header);
  EXPECT_EQ(bytes.size(), header.size() + 13 * 7 * 4);
  const SectionGrid back = decode_sgrid(bytes);
  EXPECT_EQ(encode_sgrid(back), bytes);
  EXPECT_TRUE(std::signbit(back.at(0, 0)));
}

TEST(SgridTest, LittleEndianPayload) {
  const auto bytes = encode_sgrid(SectionGrid(1, 1, 1.0));
  // 1.0f == 0x3F800000
  const std::vector<unsigned char> tail(bytes.end() - 4, bytes.end());
  EXPECT_EQ(tail, (std::vector<unsigned char>{0x00, 0x00, 0x80, 0x3F}));
}

TEST(SgridTest, RejectsMalformed) {
  const std::string bad = "SGRID 1 2 2\nabc";
  EXPECT_THROW(decode_sgrid(std::vector<unsigned char>(bad.begin(), bad.end())),
               std::runtime_error);
  const std::string wrong = "GRID 1 1 1\n0000";
  EXPECT_THROW(
      decode_sgrid(std::vector<unsigned char>(wrong.begin(), wrong.end())),
      std::runtime_error);
}

}  // namespace
}  // namespace seistex
