#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "seistex/grid.hpp"

namespace seistex {

/// Linear decision function w.x + b separating `class_id` from the rest.
struct LinearModel {
  int class_id = 0;
  double bias = 0.0;
  std::vector<double> weights;

  double score(std::span<const double> x) const;
};

struct SvmOptions {
  double c = 1e4;               // large C approximates a hard margin
  double tolerance = 1e-3;      // KKT violation at which SMO stops
  long max_iterations = 2'000'000;
};

/// Optional diagnostics of one binary training run.
struct SvmTrace {
  std::vector<double> dual_objective;  // after every SMO step, if recorded
  long iterations = 0;
  bool converged = false;
  double primal_objective = 0.0;
  bool record_objective = false;
};

/// Soft-margin linear SVM, min 1/2 |w|^2 + C sum hinge(1 - y (w.x + b)),
/// solved in the dual by SMO with second-order working-set selection.
/// Labels must be +1/-1 with both signs present. Deterministic.
LinearModel train_binary_svm(std::span<const std::vector<double>> features,
                             std::span<const int> labels,
                             const SvmOptions& options = {},
                             SvmTrace* trace = nullptr);

/// Primal objective 1/2 |w|^2 + C sum hinge of `model` on a labeled set.
double svm_primal_objective(const LinearModel& model,
                            std::span<const std::vector<double>> features,
                            std::span<const int> labels, double c);

/// One linear model per class, trained one-versus-all.
struct OvaModel {
  Descriptor descriptor = Descriptor::lbp;
  std::size_t feature_dim = 0;
  std::vector<LinearModel> models;

  std::size_t class_count() const { return models.size(); }
};

/// Trains one binary model per class in [0, class_count). Every class needs
/// at least one sample. Classes are trained on up to `workers` threads; the
/// result does not depend on the worker count.
OvaModel train_ova(std::span<const std::vector<double>> features,
                   std::span<const int> classes, int class_count,
                   Descriptor descriptor, const SvmOptions& options = {},
                   int workers = 1);

/// argmax_c w_c.x + b_c; ties go to the lowest class id.
int predict(const OvaModel& model, std::span<const double> feature);
int predict(const OvaModel& model, const FeatureHistogram& feature);

// Model bundle text format:
//   OVAMODEL 1 <n_classes> <dim> <descriptor>
//   <bias> <w_1> ... <w_dim>      (one line per class, shortest round-trip)
std::string encode_model(const OvaModel& model);
OvaModel decode_model(const std::string& text);
void save_model(const std::filesystem::path& path, const OvaModel& model);
OvaModel load_model(const std::filesystem::path& path);

}  // namespace seistex
