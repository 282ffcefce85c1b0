#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "seistex/grid.hpp"

namespace seistex {

/// Which label vocabulary a model or label map uses.
///   structures: chaotic = 0, faults = 1, salt_dome = 2, other = 3
///   facies:     hst = 0, lst = 1, tst = 2
enum class ClassSet { structures, facies };

using Rgb = std::array<std::uint8_t, 3>;

int class_count(ClassSet set);
std::span<const std::string> class_names(ClassSet set);
std::span<const Rgb> class_palette(ClassSet set);
ClassSet parse_class_set(const std::string& name);
std::string class_set_name(ClassSet set);
int parse_class_name(ClassSet set, const std::string& name);

/// Per-pixel class ids aligned with a section.
class LabelGrid {
 public:
  LabelGrid() = default;
  LabelGrid(int rows, int cols, int fill = 0);
  LabelGrid(int rows, int cols, std::vector<int> labels);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return labels_.size(); }
  int& at(int r, int c) { return labels_[static_cast<std::size_t>(r) * cols_ + c]; }
  int at(int r, int c) const {
    return labels_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::span<const int> labels() const { return labels_; }

  friend bool operator==(const LabelGrid&, const LabelGrid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> labels_;
};

/// Label ids stored as SGRID values.
SectionGrid to_section_grid(const LabelGrid& labels);
/// Inverse of to_section_grid; every value must be a nonnegative integer.
LabelGrid to_label_grid(const SectionGrid& grid);

}  // namespace seistex
