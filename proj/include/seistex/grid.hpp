#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace seistex {

/// Row/column index pair into a 2D grid.
struct Coord {
  int row = 0;
  int col = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Dense row-major 2D grid of reals. Used for raw and normalized seismic
/// sections, for semblance maps, and (with integral values) for label and
/// superpixel-id exports.
class SectionGrid {
 public:
  SectionGrid() = default;
  SectionGrid(int rows, int cols, double fill = 0.0);
  SectionGrid(int rows, int cols, std::vector<double> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& at(int r, int c) { return values_[index(r, c)]; }
  double at(int r, int c) const { return values_[index(r, c)]; }
  double& operator[](Coord p) { return at(p.row, p.col); }
  double operator[](Coord p) const { return at(p.row, p.col); }

  /// Edge-replicated read: coordinates outside the grid are clamped.
  double clamped(int r, int c) const;

  bool contains(Coord p) const {
    return p.row >= 0 && p.row < rows_ && p.col >= 0 && p.col < cols_;
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

/// Square window cut from a section. `size` is always odd so the window has
/// a unique center pixel; `center` records where it came from.
class Patch {
 public:
  Patch() = default;
  Patch(int size, Coord center = {});
  Patch(int size, std::vector<double> values, Coord center = {});

  int size() const { return size_; }
  Coord center() const { return center_; }
  int half() const { return size_ / 2; }

  double& at(int r, int c) {
    return values_[static_cast<std::size_t>(r) * size_ + c];
  }
  double at(int r, int c) const {
    return values_[static_cast<std::size_t>(r) * size_ + c];
  }
  double clamped(int r, int c) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  Patch transposed() const;

 private:
  int size_ = 0;
  Coord center_;
  std::vector<double> values_;
};

/// Patch whose amplitudes were binned into `levels` integer gray levels.
struct QuantPatch {
  int size = 0;
  int levels = 0;
  std::vector<int> codes;

  int at(int r, int c) const {
    return codes[static_cast<std::size_t>(r) * size + c];
  }
};

/// Texture descriptor families. The string names are what the CLI and the
/// model bundle use.
enum class Descriptor { glcm, semblance, lbp, clbp, mclbp, elbp, cldp, lri };

std::string descriptor_name(Descriptor d);
Descriptor parse_descriptor(const std::string& name);
std::span<const Descriptor> all_descriptors();

/// Attribute vector fed to the classifier. For every descriptor except GLCM
/// the bins form a normalized histogram (sum 1); GLCM yields a raw attribute
/// vector. `empty_input` marks a histogram built from zero samples, which is
/// all zeros.
struct FeatureHistogram {
  Descriptor descriptor = Descriptor::lbp;
  std::vector<double> bins;
  bool empty_input = false;

  std::size_t dim() const { return bins.size(); }
};

/// Z-score, clip to [-3, 3], then map affinely to [0, 1]. A constant grid
/// maps to 0.5 everywhere.
SectionGrid normalize_section(const SectionGrid& grid);

/// code = min(floor(v * levels), levels - 1), with v clamped to [0, 1].
QuantPatch quantize(const Patch& patch, int levels);

/// Square window of side `size` centered on `center`, out-of-bounds samples
/// replicated from the nearest edge.
Patch extract_patch(const SectionGrid& grid, Coord center, int size);

/// Hadamard product with exp(-r^2 / (2 sigma^2)), r measured from the patch
/// center. The center pixel keeps its value.
Patch gaussian_window(const Patch& patch, double sigma);

/// Weight of the Gaussian window at squared distance `dist2` from the center.
double gaussian_weight(double dist2, double sigma);

/// Normalized occurrence histogram of integer codes in [0, bin_count).
FeatureHistogram histogram(std::span<const int> codes, int bin_count,
                           Descriptor descriptor = Descriptor::lbp);

// SGRID v1 file format: ASCII header "SGRID 1 <rows> <cols>\n" followed by
// rows*cols little-endian IEEE-754 float32 values in row-major order.
SectionGrid read_sgrid(const std::filesystem::path& path);
void write_sgrid(const std::filesystem::path& path, const SectionGrid& grid);
std::vector<unsigned char> encode_sgrid(const SectionGrid& grid);
SectionGrid decode_sgrid(std::span<const unsigned char> bytes);

}  // namespace seistex
