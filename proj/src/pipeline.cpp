#include "seistex/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "seistex/lbp.hpp"
#include "seistex/parallel.hpp"

namespace seistex {

namespace {

std::vector<SectionGrid> load_normalized(
    const std::vector<std::filesystem::path>& paths) {
  std::vector<SectionGrid> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    if (!std::filesystem::exists(p)) {
      throw ConfigError("section file not found: " + p.string());
    }
    out.push_back(normalize_section(read_sgrid(p)));
  }
  return out;
}

struct Candidate {
  int section;
  Coord center;
};

}  // namespace

ExemplarSet load_exemplars(const std::filesystem::path& manifest, ClassSet set,
                           int patch_size) {
  std::ifstream in(manifest);
  if (!in) throw ConfigError("cannot open exemplar manifest " + manifest.string());
  ExemplarSet ex;
  ex.per_class.resize(class_count(set));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    std::istringstream row(line);
    std::string name;
    std::string section;
    int r = 0;
    int c = 0;
    if (!(row >> name)) continue;
    if (!(row >> section >> r >> c)) {
      throw ConfigError(manifest.string() + ":" + std::to_string(line_no) +
                        ": expected '<class> <section> <row> <col>'");
    }
    int k = 0;
    try {
      k = parse_class_name(set, name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(manifest.string() + ":" + std::to_string(line_no) +
                        ": " + e.what());
    }
    std::filesystem::path p(section);
    if (p.is_relative()) p = manifest.parent_path() / p;
    if (!std::filesystem::exists(p)) {
      throw ConfigError("exemplar section not found: " + p.string());
    }
    const SectionGrid grid = normalize_section(read_sgrid(p));
    if (!grid.contains({r, c})) {
      throw ConfigError(manifest.string() + ":" + std::to_string(line_no) +
                        ": exemplar center outside section");
    }
    ex.per_class[k].push_back(extract_patch(grid, {r, c}, patch_size));
  }
  for (std::size_t k = 0; k < ex.per_class.size(); ++k) {
    if (ex.per_class[k].empty()) {
      throw ConfigError("exemplar manifest has no exemplar for class '" +
                        class_names(set)[k] + "'");
    }
  }
  return ex;
}

SimilarityMetric mclbp_chi_square_similarity() {
  return {[](const Patch& p) { return mclbp_feature(p); },
          [](const FeatureHistogram& a, const FeatureHistogram& b) {
            return -chi_square_distance(a, b);
          }};
}

TrainingSet harvest_patches(const std::vector<SectionGrid>& sections,
                            const ExemplarSet& exemplars,
                            const HarvestParams& params,
                            const SimilarityMetric& metric) {
  if (params.stride < 1 || params.per_class < 1) {
    throw std::invalid_argument("harvest_patches: stride, per_class must be >= 1");
  }
  const int classes = static_cast<int>(exemplars.per_class.size());
  if (classes < 1) {
    throw std::invalid_argument("harvest_patches: no exemplar classes");
  }
  const int size = params.patch_size;
  const int half = size / 2;

  std::vector<std::vector<FeatureHistogram>> exemplar_desc(classes);
  for (int k = 0; k < classes; ++k) {
    if (exemplars.per_class[k].empty()) {
      throw std::invalid_argument("harvest_patches: class without exemplars");
    }
    for (const Patch& p : exemplars.per_class[k]) {
      if (p.size() != size) {
        throw std::invalid_argument(
            "harvest_patches: exemplar size differs from patch size");
      }
      exemplar_desc[k].push_back(metric.describe(p));
    }
  }

  std::vector<Candidate> candidates;
  for (int s = 0; s < static_cast<int>(sections.size()); ++s) {
    const SectionGrid& g = sections[s];
    for (int r0 = 0; r0 + size <= g.rows(); r0 += params.stride) {
      for (int c0 = 0; c0 + size <= g.cols(); c0 += params.stride) {
        candidates.push_back({s, {r0 + half, c0 + half}});
      }
    }
  }

  // scores[i * classes + k]: best similarity of candidate i to class k.
  std::vector<double> scores(candidates.size() * classes);
  parallel_for(candidates.size(), params.workers, [&](std::size_t i) {
    const Candidate& cand = candidates[i];
    const FeatureHistogram d =
        metric.describe(extract_patch(sections[cand.section], cand.center, size));
    for (int k = 0; k < classes; ++k) {
      double best = -std::numeric_limits<double>::infinity();
      for (const FeatureHistogram& e : exemplar_desc[k]) {
        best = std::max(best, metric.similarity(d, e));
      }
      scores[i * classes + k] = best;
    }
  });

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Stable so equal scores keep scan order (candidate, then class).
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  TrainingSet out;
  out.per_class.resize(classes);
  std::vector<bool> used(candidates.size(), false);
  for (std::size_t idx : order) {
    const std::size_t i = idx / classes;
    const int k = static_cast<int>(idx % classes);
    if (used[i] ||
        static_cast<int>(out.per_class[k].size()) >= params.per_class) {
      continue;
    }
    used[i] = true;
    out.per_class[k].push_back(
        {candidates[i].section, candidates[i].center, scores[idx]});
  }
  for (const auto& list : out.per_class) {
    if (static_cast<int>(list.size()) < params.per_class) {
      out.short_of_target = true;
    }
  }
  return out;
}

OvaModel train_model(const std::vector<SectionGrid>& sections,
                     const TrainingSet& training, Descriptor descriptor,
                     int patch_size, const FeatureOptions& features,
                     const SvmOptions& svm, int workers) {
  std::vector<const HarvestedPatch*> items;
  std::vector<int> classes;
  for (int k = 0; k < static_cast<int>(training.per_class.size()); ++k) {
    for (const HarvestedPatch& h : training.per_class[k]) {
      items.push_back(&h);
      classes.push_back(k);
    }
  }
  std::vector<std::vector<double>> x(items.size());
  parallel_for(items.size(), workers, [&](std::size_t i) {
    const HarvestedPatch& h = *items[i];
    const Patch p = extract_patch(sections.at(h.section), h.center, patch_size);
    x[i] = extract_features(descriptor, p, features).bins;
  });
  return train_ova(x, classes, static_cast<int>(training.per_class.size()),
                   descriptor, svm, workers);
}

TrainResult train_pipeline(const PipelineConfig& config) {
  if (config.sections.empty()) throw ConfigError("config: no sections given");
  if (config.exemplars.empty()) throw ConfigError("config: no exemplars given");
  if (config.model.empty()) throw ConfigError("config: no model path given");

  const std::vector<SectionGrid> sections = load_normalized(config.sections);
  const ExemplarSet exemplars =
      load_exemplars(config.exemplars, config.classes, config.patch_size);

  TrainResult result;
  result.training = harvest_patches(
      sections, exemplars,
      {config.patch_size, config.stride, config.per_class, config.workers});
  SvmOptions svm;
  svm.c = config.svm_c;
  result.model = train_model(sections, result.training, config.descriptor,
                             config.patch_size, config.feature_options(), svm,
                             config.workers);
  save_model(config.model, result.model);
  return result;
}

LabelResult label_section(const SectionGrid& normalized, const OvaModel& model,
                          const LabelParams& params) {
  if (model.feature_dim != feature_dim(model.descriptor, params.features)) {
    throw std::invalid_argument(
        "label_section: model dimension " + std::to_string(model.feature_dim) +
        " does not match descriptor " + descriptor_name(model.descriptor) +
        " (" + std::to_string(feature_dim(model.descriptor, params.features)) +
        ")");
  }
  LabelResult out;
  out.superpixels = slic_segment(normalized, params.slic);
  const auto& centroids = out.superpixels.centroids;
  out.superpixel_class.assign(centroids.size(), 0);
  parallel_for(centroids.size(), params.workers, [&](std::size_t k) {
    const Patch p = extract_patch(normalized, centroids[k], params.patch_size);
    out.superpixel_class[k] =
        predict(model, extract_features(model.descriptor, p, params.features));
  });
  out.labels = LabelGrid(normalized.rows(), normalized.cols());
  for (int r = 0; r < normalized.rows(); ++r) {
    for (int c = 0; c < normalized.cols(); ++c) {
      out.labels.at(r, c) = out.superpixel_class[out.superpixels.id(r, c)];
    }
  }
  return out;
}

std::string format_training_manifest(
    const TrainingSet& training, ClassSet set,
    const std::vector<std::filesystem::path>& section_paths) {
  std::string out;
  const auto names = class_names(set);
  char score[64];
  for (std::size_t k = 0; k < training.per_class.size(); ++k) {
    for (const HarvestedPatch& h : training.per_class[k]) {
      std::snprintf(score, sizeof(score), "%.17g", h.score);
      const std::string section =
          h.section < static_cast<int>(section_paths.size())
              ? section_paths[h.section].string()
              : std::to_string(h.section);
      out += names[k] + " " + section + " " + std::to_string(h.center.row) +
             " " + std::to_string(h.center.col) + " " + score + "\n";
    }
  }
  return out;
}

}  // namespace seistex
