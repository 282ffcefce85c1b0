#include <random>

#include <gtest/gtest.h>

#include "seistex/metrics.hpp"

namespace seistex {
namespace {

// Per-pixel evaluation written directly from the metric definitions.
ScoreReport oracle(const LabelGrid& pred, const LabelGrid& truth, int n) {
  const auto p = pred.labels();
  const auto t = truth.labels();
  const double total = static_cast<double>(p.size());
  double correct = 0;
  for (std::size_t i = 0; i < p.size(); ++i) correct += p[i] == t[i];
  ScoreReport r;
  r.pa = correct / total;
  for (int c = 0; c < n; ++c) {
    double tp = 0, in_truth = 0, in_pred = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      tp += p[i] == c && t[i] == c;
      in_truth += t[i] == c;
      in_pred += p[i] == c;
    }
    const double uni = in_truth + in_pred - tp;
    if (in_truth == 0) {
      const double s = in_pred == 0 ? 1.0 : 0.0;
      r.mca += s;
      r.miu += s;
      continue;
    }
    r.mca += tp / in_truth;
    r.miu += tp / uni;
    r.fwiu += (in_truth / total) * (tp / uni);
  }
  r.mca /= n;
  r.miu /= n;
  return r;
}

LabelGrid from_confusion(const std::vector<std::vector<int>>& m,
                         LabelGrid* truth) {
  std::vector<int> p, t;
  for (std::size_t j = 0; j < m.size(); ++j)
    for (std::size_t i = 0; i < m[j].size(); ++i)
      for (int k = 0; k < m[j][i]; ++k) {
        t.push_back(static_cast<int>(j));
        p.push_back(static_cast<int>(i));
      }
  *truth = LabelGrid(1, static_cast<int>(t.size()), t);
  return LabelGrid(1, static_cast<int>(p.size()), p);
}

TEST(MetricsTest, WorkedTwoClassMatrix) {
  LabelGrid truth;
  const LabelGrid pred = from_confusion({{3, 1}, {0, 4}}, &truth);
  const ConfusionMatrix cm = confusion_matrix(pred, truth, 2);
  EXPECT_EQ(cm.at(0, 0), 3u);
  EXPECT_EQ(cm.at(0, 1), 1u);
  EXPECT_EQ(cm.at(1, 1), 4u);
  EXPECT_EQ(cm.truth_total(0), 4u);
  EXPECT_EQ(cm.predicted_total(1), 5u);
  const ScoreReport r = compute_metrics(cm);
  EXPECT_DOUBLE_EQ(r.pa, 0.875);
  EXPECT_DOUBLE_EQ(r.mca, 0.875);
  EXPECT_DOUBLE_EQ(r.miu, 0.775);
  EXPECT_DOUBLE_EQ(r.fwiu, 0.775);
  EXPECT_EQ(format_report(r),
            "pa = 0.8750\nmca = 0.8750\nmiu = 0.7750\nfwiu = 0.7750\n");
}

TEST(MetricsTest, MatchesPerPixelOracle) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int rows = 1 + static_cast<int>(rng() % 6);
    const int cols = 1 + static_cast<int>(rng() % 6);
    LabelGrid truth(rows, cols), pred(rows, cols);
    // Sometimes restrict the truth to fewer classes to hit the empty rule.
    const int truth_classes = trial % 3 == 0 ? 1 + static_cast<int>(rng() % n) : n;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        truth.at(r, c) = static_cast<int>(rng() % truth_classes);
        pred.at(r, c) = rng() % 3 == 0 ? static_cast<int>(rng() % n)
                                       : truth.at(r, c);
      }
    const ScoreReport a = compute_metrics(confusion_matrix(pred, truth, n));
    const ScoreReport b = oracle(pred, truth, n);
    EXPECT_NEAR(a.pa, b.pa, 1e-12);
    EXPECT_NEAR(a.mca, b.mca, 1e-12);
    EXPECT_NEAR(a.miu, b.miu, 1e-12);
    EXPECT_NEAR(a.fwiu, b.fwiu, 1e-12);
    for (double v : {a.pa, a.mca, a.miu, a.fwiu}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(a.miu, a.mca + 1e-12);
  }
}

TEST(MetricsTest, AllOnesIffPerfect) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    LabelGrid truth(4, 4), pred(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) truth.at(r, c) = pred.at(r, c) = rng() % 3;
    const bool perturb = trial % 2 == 1;
    if (perturb) pred.at(1, 2) = (pred.at(1, 2) + 1) % 3;
    const ScoreReport s = compute_metrics(confusion_matrix(pred, truth, 3));
    const bool all_one = s.pa == 1.0 && s.mca == 1.0 && s.miu == 1.0 &&
                         s.fwiu == 1.0;
    EXPECT_EQ(all_one, !perturb);
  }
}

TEST(MetricsTest, FwiuEqualsMiuForBalancedClasses) {
  LabelGrid truth(1, 8, {0, 0, 1, 1, 2, 2, 3, 3});
  LabelGrid pred(1, 8, {0, 1, 1, 1, 2, 0, 3, 3});
  const ScoreReport s = compute_metrics(confusion_matrix(pred, truth, 4));
  EXPECT_NEAR(s.fwiu, s.miu, 1e-15);
}

TEST(MetricsTest, AbsentClassRule) {
  const LabelGrid truth(1, 4, {0, 0, 1, 1});
  // Class 2 absent and never predicted: counts as 1.
  ScoreReport s = compute_metrics(confusion_matrix(truth, truth, 3));
  EXPECT_DOUBLE_EQ(s.mca, 1.0);
  EXPECT_DOUBLE_EQ(s.miu, 1.0);
  // Predicted once without support: counts as 0.
  s = compute_metrics(confusion_matrix(LabelGrid(1, 4, {0, 0, 1, 2}), truth, 3));
  EXPECT_DOUBLE_EQ(s.mca, (1.0 + 0.5 + 0.0) / 3.0);
}

TEST(MetricsTest, Errors) {
  EXPECT_THROW(confusion_matrix(LabelGrid(2, 2), LabelGrid(2, 3), 2),
               std::invalid_argument);
  EXPECT_THROW(confusion_matrix(LabelGrid(1, 1, 5), LabelGrid(1, 1), 2),
               std::invalid_argument);
  EXPECT_THROW(compute_metrics(ConfusionMatrix{2, {0, 0, 0, 0}}),
               std::invalid_argument);
}

TEST(RenderTest, SinglePixelPalette) {
  const auto ppm = render_labels(LabelGrid(1, 1, 2), ClassSet::structures);
  const std::string header = "P6\n1 1\n255\n";
  ASSERT_EQ(ppm.size(), header.size() + 3);
  EXPECT_EQ(std::string(ppm.begin(), ppm.begin() + header.size()), header);
  EXPECT_EQ(ppm[header.size()], 255);
  EXPECT_EQ(ppm[header.size() + 1], 0);
  EXPECT_EQ(ppm[header.size() + 2], 0);
}

TEST(RenderTest, PaletteRoundTripAndBlend) {
  for (ClassSet set : {ClassSet::structures, ClassSet::facies}) {
    const int n = class_count(set);
    LabelGrid labels(2, n);
    for (int c = 0; c < n; ++c) labels.at(0, c) = labels.at(1, c) = c;
    const auto ppm = render_labels(labels, set);
    const std::string header = "P6\n" + std::to_string(n) + " 2\n255\n";
    const auto palette = class_palette(set);
    // Decode each pixel back to the unique palette entry.
    for (int c = 0; c < n; ++c) {
      const std::size_t o = header.size() + 3 * c;
      const Rgb px{ppm[o], ppm[o + 1], ppm[o + 2]};
      int found = -1;
      for (int k = 0; k < n; ++k)
        if (palette[k] == px) found = k;
      EXPECT_EQ(found, c);
    }
  }
  const auto blended = render_labels(LabelGrid(1, 1, 0), ClassSet::structures,
                                     SectionGrid(1, 1, 1.0));
  // chaotic blue (0, 0, 255) with white.
  EXPECT_NEAR(blended[blended.size() - 3], 128, 1);
  EXPECT_NEAR(blended[blended.size() - 1], 255, 1);
}

TEST(LabelGridTest, SgridConversionAndNames) {
  const LabelGrid l(2, 3, {0, 1, 2, 3, 0, 1});
  EXPECT_EQ(to_label_grid(to_section_grid(l)), l);
  EXPECT_THROW(to_label_grid(SectionGrid(1, 1, 0.5)), std::invalid_argument);
  EXPECT_EQ(parse_class_name(ClassSet::structures, "salt_dome"), 2);
  EXPECT_EQ(parse_class_name(ClassSet::facies, "tst"), 2);
  EXPECT_THROW(parse_class_name(ClassSet::facies, "faults"),
               std::invalid_argument);
  EXPECT_EQ(parse_class_set("facies"), ClassSet::facies);
  EXPECT_EQ(class_count(ClassSet::structures), 4);
}

}  // namespace
}  // namespace seistex
