#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seistex/grid.hpp"
#include "seistex/labels.hpp"

namespace seistex {

/// counts[j * classes + i]: pixels of true class j predicted as class i.
struct ConfusionMatrix {
  int classes = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(int truth, int predicted) const {
    return counts[static_cast<std::size_t>(truth) * classes + predicted];
  }
  std::uint64_t truth_total(int j) const;
  std::uint64_t predicted_total(int i) const;
  std::uint64_t total() const;
};

/// Pixel accuracy, mean class accuracy, mean IU and frequency-weighted IU.
struct ScoreReport {
  double pa = 0.0;
  double mca = 0.0;
  double miu = 0.0;
  double fwiu = 0.0;
};

ConfusionMatrix confusion_matrix(const LabelGrid& predicted,
                                 const LabelGrid& truth, int classes);

/// A class absent from the ground truth scores 1 in MCA and MIU when nothing
/// was predicted as it and 0 otherwise.
ScoreReport compute_metrics(const ConfusionMatrix& cm);

/// "pa = 0.8750" style lines, one per metric.
std::string format_report(const ScoreReport& report);

/// Binary PPM (P6) of the class palette. With a background section (values
/// in [0, 1]) each pixel is a 50/50 blend of class color and gray amplitude.
std::vector<unsigned char> render_labels(
    const LabelGrid& labels, ClassSet set,
    const std::optional<SectionGrid>& background = std::nullopt);

void write_file(const std::filesystem::path& path,
                const std::vector<unsigned char>& bytes);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace seistex
