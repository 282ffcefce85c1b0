#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seistex/descriptor.hpp"
#include "seistex/grid.hpp"
#include "seistex/labels.hpp"
#include "seistex/slic.hpp"
#include "seistex/svm.hpp"

namespace seistex {

/// Bad or missing configuration, config-referenced files, or manifests.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default patch side for the facies class set when the config sets none.
inline constexpr int kFaciesPatchSize = 49;

/// Settings shared by the train and label workflows. Loaded from a
/// line-oriented `key = value` file; see load_config for the key list.
struct PipelineConfig {
  Descriptor descriptor = Descriptor::lbp;
  int patch_size = 99;
  ClassSet classes = ClassSet::structures;
  int stride = 16;
  int per_class = 500;
  double sigma = 25.0;
  SlicParams slic{};
  double svm_c = 1e4;
  std::vector<std::filesystem::path> sections;
  std::filesystem::path exemplars;
  std::filesystem::path model;
  std::filesystem::path output;
  int workers = 1;

  FeatureOptions feature_options() const;
};

/// Parses config text. Keys: descriptor, patch_size, classes, stride,
/// per_class, sigma, slic_region_size, slic_compactness, slic_iterations,
/// svm_c, sections (comma separated), exemplars, model, output. Blank lines
/// and `#` comments are ignored; relative paths resolve against `base_dir`.
/// With `classes = facies` the patch size defaults to kFaciesPatchSize.
/// Unknown keys and malformed values raise ConfigError.
PipelineConfig parse_config(const std::string& text,
                            const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

/// Manually chosen exemplar patches, indexed by class id.
struct ExemplarSet {
  std::vector<std::vector<Patch>> per_class;
};

/// Reads an exemplar manifest: one `<class> <section.sgrid> <row> <col>`
/// line per exemplar (relative paths resolve against the manifest's
/// directory). Each section is normalized and a patch of `patch_size` is
/// cut around (row, col). Every class needs at least one exemplar.
ExemplarSet load_exemplars(const std::filesystem::path& manifest, ClassSet set,
                           int patch_size);

/// Pluggable similarity between a candidate window and an exemplar. Larger
/// is more similar. `describe` runs once per window.
struct SimilarityMetric {
  std::function<FeatureHistogram(const Patch&)> describe;
  std::function<double(const FeatureHistogram&, const FeatureHistogram&)>
      similarity;
};

/// Negative chi-square distance between M-CLBP histograms.
SimilarityMetric mclbp_chi_square_similarity();

struct HarvestParams {
  int patch_size = 99;
  int stride = 16;
  int per_class = 500;
  int workers = 1;
};

struct HarvestedPatch {
  int section = 0;  // index into the input section list
  Coord center;
  double score = 0.0;
};

struct TrainingSet {
  std::vector<std::vector<HarvestedPatch>> per_class;  // best first
  bool short_of_target = false;  // some class got fewer than per_class
};

/// Slides a window (fully inside the section, step `stride`) over every
/// section, scores each window against each class's best-matching exemplar
/// and fills the classes greedily in descending score order: a window goes
/// to the highest-scoring class that still has room, and no window is used
/// twice. Each class receives min(per_class, remaining) windows.
TrainingSet harvest_patches(const std::vector<SectionGrid>& sections,
                            const ExemplarSet& exemplars,
                            const HarvestParams& params,
                            const SimilarityMetric& metric =
                                mclbp_chi_square_similarity());

/// Featurizes every harvested window with `descriptor` (after the Gaussian
/// window) and trains the one-versus-all model.
OvaModel train_model(const std::vector<SectionGrid>& sections,
                     const TrainingSet& training, Descriptor descriptor,
                     int patch_size, const FeatureOptions& features,
                     const SvmOptions& svm, int workers);

struct TrainResult {
  TrainingSet training;
  OvaModel model;
};

/// Full training workflow driven by a config: load and normalize sections,
/// load exemplars, harvest, featurize, train, then write the model bundle
/// atomically to config.model. Nothing is written when any input is missing.
TrainResult train_pipeline(const PipelineConfig& config);

struct LabelParams {
  int patch_size = 99;
  FeatureOptions features{};
  SlicParams slic{};
  int workers = 1;
};

struct LabelResult {
  LabelGrid labels;
  SuperpixelMap superpixels;
  std::vector<int> superpixel_class;
};

/// Segments a normalized section into superpixels, classifies the
/// patch_size neighborhood around each centroid and paints the superpixel
/// with the predicted class.
LabelResult label_section(const SectionGrid& normalized, const OvaModel& model,
                          const LabelParams& params);

/// TrainingSet manifest: `<class> <section> <row> <col> <score>` per line.
std::string format_training_manifest(
    const TrainingSet& training, ClassSet set,
    const std::vector<std::filesystem::path>& section_paths);

}  // namespace seistex
