// seistex: harvest, train, label, evaluate, render and selftest.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seistex/checks.hpp"
#include "seistex/metrics.hpp"
#include "seistex/parallel.hpp"
#include "seistex/pipeline.hpp"

namespace fs = std::filesystem;
using namespace seistex;

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::string config;
  std::string descriptor;
  int patch_size = 0;
  int workers = 0;
  int seed_grid = 0;
  std::string out;
};

PipelineConfig resolve_config(const Overrides& o) {
  if (o.config.empty()) throw UsageError("--config is required");
  PipelineConfig cfg = load_config(o.config);
  if (!o.descriptor.empty()) {
    try {
      cfg.descriptor = parse_descriptor(o.descriptor);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (o.patch_size != 0) {
    if (o.patch_size < kMinPatchSize || o.patch_size % 2 == 0) {
      throw ConfigError("--patch-size must be odd and >= " +
                        std::to_string(kMinPatchSize));
    }
    cfg.patch_size = o.patch_size;
  }
  if (o.seed_grid != 0) {
    if (o.seed_grid < 4) throw ConfigError("--seed-grid must be >= 4");
    cfg.slic.region_size = o.seed_grid;
  }
  cfg.workers = o.workers > 0 ? o.workers : default_workers();
  return cfg;
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::exists(p)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
}

ClassSet class_set_or(const std::string& name, const std::string& config) {
  if (!name.empty()) {
    try {
      return parse_class_set(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (!config.empty()) return load_config(config).classes;
  return ClassSet::structures;
}

int cmd_harvest(const Overrides& o) {
  const PipelineConfig cfg = resolve_config(o);
  if (cfg.sections.empty()) throw ConfigError("config: no sections given");
  if (cfg.exemplars.empty()) throw ConfigError("config: no exemplars given");
  std::vector<SectionGrid> sections;
  for (const auto& p : cfg.sections) {
    require_file(p, "section");
    sections.push_back(normalize_section(read_sgrid(p)));
  }
  const ExemplarSet ex = load_exemplars(cfg.exemplars, cfg.classes, cfg.patch_size);
  const TrainingSet set = harvest_patches(
      sections, ex, {cfg.patch_size, cfg.stride, cfg.per_class, cfg.workers});
  if (set.short_of_target) {
    std::cerr << "warning: not enough candidate windows for " << cfg.per_class
              << " patches per class\n";
  }
  const std::string manifest =
      format_training_manifest(set, cfg.classes, cfg.sections);
  if (o.out.empty()) {
    std::cout << manifest;
  } else {
    write_file(o.out, manifest);
  }
  return 0;
}

int cmd_train(const Overrides& o) {
  PipelineConfig cfg = resolve_config(o);
  if (!o.out.empty()) cfg.model = o.out;
  const TrainResult r = train_pipeline(cfg);
  if (r.training.short_of_target) {
    std::cerr << "warning: not enough candidate windows for " << cfg.per_class
              << " patches per class\n";
  }
  std::cerr << "wrote " << cfg.model.string() << " ("
            << descriptor_name(r.model.descriptor) << ", "
            << r.model.class_count() << " classes, dim " << r.model.feature_dim
            << ")\n";
  return 0;
}

int cmd_label(const Overrides& o, const std::string& section_path) {
  const PipelineConfig cfg = resolve_config(o);
  if (cfg.model.empty()) throw ConfigError("config: no model path given");
  require_file(cfg.model, "model bundle");
  require_file(section_path, "section");
  const OvaModel model = load_model(cfg.model);
  if (!o.descriptor.empty() && model.descriptor != cfg.descriptor) {
    throw ConfigError("--descriptor " + o.descriptor +
                      " does not match the model's descriptor " +
                      descriptor_name(model.descriptor));
  }
  if (static_cast<int>(model.class_count()) != class_count(cfg.classes)) {
    throw ConfigError("model has " + std::to_string(model.class_count()) +
                      " classes but class set " + class_set_name(cfg.classes) +
                      " has " + std::to_string(class_count(cfg.classes)));
  }
  const SectionGrid normalized = normalize_section(read_sgrid(section_path));
  LabelParams lp;
  lp.patch_size = cfg.patch_size;
  lp.features = cfg.feature_options();
  lp.slic = cfg.slic;
  lp.workers = cfg.workers;
  const LabelResult r = label_section(normalized, model, lp);

  const fs::path section(section_path);
  fs::path dir = !o.out.empty()       ? fs::path(o.out)
                 : !cfg.output.empty() ? cfg.output
                                       : section.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  const std::string stem = section.stem().string();
  const fs::path grid_out = dir / (stem + ".labels.sgrid");
  const fs::path ppm_out = dir / (stem + ".labels.ppm");
  write_sgrid(grid_out, to_section_grid(r.labels));
  write_file(ppm_out, render_labels(r.labels, cfg.classes, normalized));
  std::cerr << "wrote " << grid_out.string() << " and " << ppm_out.string()
            << " (" << r.superpixels.count << " superpixels)\n";
  return 0;
}

int cmd_evaluate(const std::string& pred, const std::string& truth,
                 const std::string& classes, const std::string& config,
                 const std::string& out) {
  require_file(pred, "predicted label grid");
  require_file(truth, "ground-truth label grid");
  const ClassSet set = class_set_or(classes, config);
  const LabelGrid p = to_label_grid(read_sgrid(pred));
  const LabelGrid t = to_label_grid(read_sgrid(truth));
  const std::string report =
      format_report(compute_metrics(confusion_matrix(p, t, class_count(set))));
  std::cout << report;
  if (!out.empty()) write_file(out, report);
  return 0;
}

int cmd_render(const std::string& labels, const std::string& section,
               const std::string& classes, const std::string& config,
               const std::string& out) {
  if (out.empty()) throw UsageError("render needs --out");
  require_file(labels, "label grid");
  const ClassSet set = class_set_or(classes, config);
  std::optional<SectionGrid> background;
  if (!section.empty()) {
    require_file(section, "section");
    background = normalize_section(read_sgrid(section));
  }
  write_file(out, render_labels(to_label_grid(read_sgrid(labels)), set, background));
  return 0;
}

int cmd_selftest() {
  int failed = 0;
  for (const PropertyCheck& check : property_checks()) {
    const CheckResult r = run_check(check);
    std::cout << format_check(r) << "\n" << std::flush;
    failed += !r.passed;
  }
  std::cout << failed << " suites failed\n";
  return failed == 0 ? 0 : kRuntimeError;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Pipeline config file");
  cmd->add_option("--descriptor", o.descriptor,
                  "glcm, semblance, lbp, clbp, mclbp, elbp, cldp or lri");
  cmd->add_option("--patch-size", o.patch_size, "Odd patch side in pixels");
  cmd->add_option("--workers", o.workers, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed-grid", o.seed_grid,
                  "Superpixel seed spacing S in pixels");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Texture-based seismic section labeling"};
  app.require_subcommand(1);

  Overrides o;
  std::string section, pred, truth, labels, classes;

  auto* harvest = app.add_subcommand("harvest", "Write the harvested training-patch manifest");
  add_common(harvest, o);
  harvest->add_option("--out", o.out, "Manifest path (default: stdout)");

  auto* train = app.add_subcommand("train", "Harvest, featurize and train a model bundle");
  add_common(train, o);
  train->add_option("--out", o.out, "Model path (default: config 'model')");

  auto* label = app.add_subcommand("label", "Label a section with a trained model");
  add_common(label, o);
  label->add_option("--section", section, "Section SGRID file")->required();
  label->add_option("--out", o.out, "Output directory");

  auto* evaluate = app.add_subcommand("evaluate", "Score a label grid against ground truth");
  evaluate->add_option("--pred", pred, "Predicted label SGRID")->required();
  evaluate->add_option("--truth", truth, "Ground-truth label SGRID")->required();
  evaluate->add_option("--classes", classes, "structures or facies");
  evaluate->add_option("--config", o.config, "Take the class set from a config");
  evaluate->add_option("--out", o.out, "Also write the report here");

  auto* render = app.add_subcommand("render", "Render a label grid as PPM");
  render->add_option("--labels", labels, "Label SGRID")->required();
  render->add_option("--section", section, "Amplitude SGRID to blend under the colors");
  render->add_option("--classes", classes, "structures or facies");
  render->add_option("--config", o.config, "Take the class set from a config");
  render->add_option("--out", o.out, "PPM path");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*harvest) return cmd_harvest(o);
    if (*train) return cmd_train(o);
    if (*label) return cmd_label(o, section);
    if (*evaluate) return cmd_evaluate(pred, truth, classes, o.config, o.out);
    if (*render) return cmd_render(labels, section, classes, o.config, o.out);
    if (*selftest) return cmd_selftest();
  } catch (const UsageError& e) {
    const auto used = app.get_subcommands();
    std::cerr << "error: " << e.what() << "\n\n"
              << (used.empty() ? app.help() : used.front()->help());
    return kUsageError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
