#include "seistex/labels.hpp"

#include <cmath>
#include <stdexcept>

namespace seistex {

namespace {

const std::array<std::string, 4> kStructureNames{"chaotic", "faults",
                                                 "salt_dome", "other"};
const std::array<std::string, 3> kFaciesNames{"hst", "lst", "tst"};

constexpr std::array<Rgb, 4> kStructurePalette{
    {{0, 0, 255}, {0, 255, 0}, {255, 0, 0}, {128, 128, 128}}};
constexpr std::array<Rgb, 3> kFaciesPalette{
    {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}}};

}  // namespace

int class_count(ClassSet set) {
  return set == ClassSet::structures ? 4 : 3;
}

std::span<const std::string> class_names(ClassSet set) {
  if (set == ClassSet::structures) return kStructureNames;
  return kFaciesNames;
}

std::span<const Rgb> class_palette(ClassSet set) {
  if (set == ClassSet::structures) return kStructurePalette;
  return kFaciesPalette;
}

ClassSet parse_class_set(const std::string& name) {
  if (name == "structures") return ClassSet::structures;
  if (name == "facies") return ClassSet::facies;
  throw std::invalid_argument("unknown class set '" + name +
                              "' (expected structures or facies)");
}

std::string class_set_name(ClassSet set) {
  return set == ClassSet::structures ? "structures" : "facies";
}

int parse_class_name(ClassSet set, const std::string& name) {
  const auto names = class_names(set);
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return static_cast<int>(k);
  }
  throw std::invalid_argument("unknown class '" + name + "' for class set " +
                              class_set_name(set));
}

LabelGrid::LabelGrid(int rows, int cols, int fill) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("LabelGrid: rows and cols must be >= 1");
  }
  labels_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

LabelGrid::LabelGrid(int rows, int cols, std::vector<int> labels)
    : rows_(rows), cols_(cols), labels_(std::move(labels)) {
  if (rows < 1 || cols < 1 ||
      labels_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("LabelGrid: shape does not match label count");
  }
}

SectionGrid to_section_grid(const LabelGrid& labels) {
  return SectionGrid(labels.rows(), labels.cols(),
                     std::vector<double>(labels.labels().begin(),
                                         labels.labels().end()));
}

LabelGrid to_label_grid(const SectionGrid& grid) {
  std::vector<int> ids;
  ids.reserve(grid.size());
  for (double v : grid.values()) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e6) {
      throw std::invalid_argument("label grid value is not a class id");
    }
    ids.push_back(static_cast<int>(v));
  }
  return LabelGrid(grid.rows(), grid.cols(), std::move(ids));
}

}  // namespace seistex
