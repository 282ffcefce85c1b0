#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "seistex/pipeline.hpp"

namespace seistex {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, int line) {
  T out{};
  const auto res =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError("config line " + std::to_string(line) + ": '" + key +
                      "' expects a number, got '" + value + "'");
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

}  // namespace

FeatureOptions PipelineConfig::feature_options() const {
  FeatureOptions f;
  f.sigma = sigma;
  return f;
}

PipelineConfig parse_config(const std::string& text,
                            const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::set<std::string> seen;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": '" +
                        key + "' has no value");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
    try {
      if (key == "descriptor") {
        cfg.descriptor = parse_descriptor(value);
      } else if (key == "patch_size") {
        cfg.patch_size = parse_number<int>(key, value, line_no);
      } else if (key == "classes") {
        cfg.classes = parse_class_set(value);
      } else if (key == "stride") {
        cfg.stride = parse_number<int>(key, value, line_no);
      } else if (key == "per_class") {
        cfg.per_class = parse_number<int>(key, value, line_no);
      } else if (key == "sigma") {
        cfg.sigma = parse_number<double>(key, value, line_no);
      } else if (key == "slic_region_size") {
        cfg.slic.region_size = parse_number<int>(key, value, line_no);
      } else if (key == "slic_compactness") {
        cfg.slic.compactness = parse_number<double>(key, value, line_no);
      } else if (key == "slic_iterations") {
        cfg.slic.iterations = parse_number<int>(key, value, line_no);
      } else if (key == "svm_c") {
        cfg.svm_c = parse_number<double>(key, value, line_no);
      } else if (key == "sections") {
        std::istringstream list(value);
        std::string item;
        while (std::getline(list, item, ',')) {
          const std::string path = trim(item);
          if (!path.empty()) cfg.sections.push_back(resolve(base_dir, path));
        }
      } else if (key == "exemplars") {
        cfg.exemplars = resolve(base_dir, value);
      } else if (key == "model") {
        cfg.model = resolve(base_dir, value);
      } else if (key == "output") {
        cfg.output = resolve(base_dir, value);
      } else {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }

  if (cfg.classes == ClassSet::facies && !seen.contains("patch_size")) {
    cfg.patch_size = kFaciesPatchSize;
  }
  if (cfg.patch_size < kMinPatchSize || cfg.patch_size % 2 == 0) {
    throw ConfigError("config: patch_size must be odd and >= " +
                      std::to_string(kMinPatchSize));
  }
  if (cfg.stride < 1 || cfg.per_class < 1) {
    throw ConfigError("config: stride and per_class must be >= 1");
  }
  if (!(cfg.sigma > 0.0) || !(cfg.svm_c > 0.0)) {
    throw ConfigError("config: sigma and svm_c must be > 0");
  }
  if (cfg.slic.region_size < 4 || cfg.slic.iterations < 1 ||
      !(cfg.slic.compactness >= 0.0)) {
    throw ConfigError(
        "config: need slic_region_size >= 4, slic_iterations >= 1, "
        "slic_compactness >= 0");
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace seistex
