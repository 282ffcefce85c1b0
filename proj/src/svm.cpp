#include "seistex/svm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seistex/parallel.hpp"

namespace seistex {

namespace {

constexpr double kTau = 1e-12;

struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
};

SparseVector to_sparse(const std::vector<double>& x) {
  SparseVector s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      s.index.push_back(static_cast<std::uint32_t>(i));
      s.value.push_back(x[i]);
    }
  }
  return s;
}

double sparse_dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.index.size() && j < b.index.size()) {
    if (a.index[i] < b.index[j]) {
      ++i;
    } else if (a.index[i] > b.index[j]) {
      ++j;
    } else {
      sum += a.value[i++] * b.value[j++];
    }
  }
  return sum;
}

// Dense symmetric linear-kernel matrix K[i][j] = x_i . x_j.
class GramMatrix {
 public:
  GramMatrix(std::span<const std::vector<double>> features, int workers)
      : n_(features.size()), k_(n_ * n_) {
    std::vector<SparseVector> sparse;
    sparse.reserve(n_);
    for (const auto& x : features) sparse.push_back(to_sparse(x));
    parallel_for(n_, workers, [&](std::size_t i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = sparse_dot(sparse[i], sparse[j]);
        k_[i * n_ + j] = v;
        k_[j * n_ + i] = v;
      }
    });
  }

  std::size_t size() const { return n_; }
  const double* row(std::size_t i) const { return k_.data() + i * n_; }
  double at(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> k_;
};

void check_training_set(std::span<const std::vector<double>> features,
                        std::size_t label_count) {
  if (features.empty()) {
    throw std::invalid_argument("train: empty training set");
  }
  if (features.size() != label_count) {
    throw std::invalid_argument("train: feature/label count mismatch");
  }
  const std::size_t dim = features.front().size();
  for (const auto& x : features) {
    if (x.size() != dim) {
      throw std::invalid_argument("train: inconsistent feature dimension");
    }
  }
}

// SMO on the dual  min 1/2 a'Qa - e'a,  0 <= a <= C,  y'a = 0, with
// Q_ij = y_i y_j K_ij. Working pairs follow the second-order rule of
// Fan, Chen and Lin; every step strictly lowers the dual objective.
LinearModel solve_smo(const GramMatrix& gram,
                      std::span<const std::vector<double>> features,
                      std::span<const int> y, const SvmOptions& opt,
                      SvmTrace* trace) {
  const std::size_t n = gram.size();
  const double c = opt.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  const auto upper = [&](std::size_t t) { return alpha[t] >= c; };
  const auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };
  const auto dual_objective = [&] {
    double f = 0.0;
    for (std::size_t t = 0; t < n; ++t) f += alpha[t] * (grad[t] - 1.0);
    return 0.5 * f;
  };

  long iter = 0;
  bool converged = false;
  while (iter < opt.max_iterations) {
    // i: maximal violator in I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t i = -1;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      const bool in_up = y[t] > 0 ? !upper(t) : !lower(t);
      if (in_up && v > gmax) {
        gmax = v;
        i = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (i < 0) {
      converged = true;
      break;
    }
    // j: in I_low, largest decrease of the second-order model.
    const double* ki = gram.row(static_cast<std::size_t>(i));
    const double kii = ki[i];
    double gmin_neg = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    std::ptrdiff_t j = -1;
    for (std::size_t t = 0; t < n; ++t) {
      const bool in_low = y[t] > 0 ? !lower(t) : !upper(t);
      if (!in_low) continue;
      const double v = y[t] * grad[t];  // = -(-y_t G_t)
      gmin_neg = std::max(gmin_neg, v);
      const double b = gmax + v;
      if (b > 0.0) {
        double a = kii + gram.at(t, t) - 2.0 * ki[t];
        if (a <= 0.0) a = kTau;
        const double decrease = -(b * b) / a;
        if (decrease < best) {
          best = decrease;
          j = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (gmax + gmin_neg < opt.tolerance || j < 0) {
      converged = true;
      break;
    }

    const std::size_t ui = static_cast<std::size_t>(i);
    const std::size_t uj = static_cast<std::size_t>(j);
    const double* kj = gram.row(uj);
    const double old_i = alpha[ui];
    const double old_j = alpha[uj];
    if (y[ui] != y[uj]) {
      double quad = kii + kj[uj] + 2.0 * (y[ui] * y[uj] * ki[uj]);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[ui] - grad[uj]) / quad;
      const double diff = alpha[ui] - alpha[uj];
      alpha[ui] += delta;
      alpha[uj] += delta;
      if (diff > 0.0) {
        if (alpha[uj] < 0.0) {
          alpha[uj] = 0.0;
          alpha[ui] = diff;
        }
      } else if (alpha[ui] < 0.0) {
        alpha[ui] = 0.0;
        alpha[uj] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[ui] > c) {
          alpha[ui] = c;
          alpha[uj] = c - diff;
        }
      } else if (alpha[uj] > c) {
        alpha[uj] = c;
        alpha[ui] = c + diff;
      }
    } else {
      double quad = kii + kj[uj] - 2.0 * ki[uj];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[ui] - grad[uj]) / quad;
      const double sum = alpha[ui] + alpha[uj];
      alpha[ui] -= delta;
      alpha[uj] += delta;
      if (sum > c) {
        if (alpha[ui] > c) {
          alpha[ui] = c;
          alpha[uj] = sum - c;
        }
      } else if (alpha[uj] < 0.0) {
        alpha[uj] = 0.0;
        alpha[ui] = sum;
      }
      if (sum > c) {
        if (alpha[uj] > c) {
          alpha[uj] = c;
          alpha[ui] = sum - c;
        }
      } else if (alpha[ui] < 0.0) {
        alpha[ui] = 0.0;
        alpha[uj] = sum;
      }
    }

    const double di = (alpha[ui] - old_i) * y[ui];
    const double dj = (alpha[uj] - old_j) * y[uj];
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (ki[t] * di + kj[t] * dj);
    }
    ++iter;
    if (trace != nullptr && trace->record_objective) {
      trace->dual_objective.push_back(dual_objective());
    }
  }

  // Offset from free support vectors, or the midpoint of the feasible range.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (upper(t)) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (ub + lb);

  LinearModel model;
  model.bias = -rho;
  model.weights.assign(features.front().size(), 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] == 0.0) continue;
    const double coef = alpha[t] * y[t];
    const auto& x = features[t];
    for (std::size_t d = 0; d < x.size(); ++d) model.weights[d] += coef * x[d];
  }
  if (trace != nullptr) {
    trace->iterations = iter;
    trace->converged = converged;
  }
  return model;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw std::runtime_error("model bundle: bad number '" + std::string(token) +
                             "'");
  }
  return v;
}

}  // namespace

double LinearModel::score(std::span<const double> x) const {
  double s = bias;
  for (std::size_t d = 0; d < x.size(); ++d) s += weights[d] * x[d];
  return s;
}

LinearModel train_binary_svm(std::span<const std::vector<double>> features,
                             std::span<const int> labels,
                             const SvmOptions& options, SvmTrace* trace) {
  check_training_set(features, labels.size());
  bool pos = false;
  bool neg = false;
  for (int l : labels) {
    if (l == 1) pos = true;
    else if (l == -1) neg = true;
    else throw std::invalid_argument("train_binary_svm: labels must be +1/-1");
  }
  if (!pos || !neg) {
    throw std::invalid_argument("train_binary_svm: both classes required");
  }
  if (!(options.c > 0.0)) {
    throw std::invalid_argument("train_binary_svm: C must be > 0");
  }
  const GramMatrix gram(features, 1);
  LinearModel m = solve_smo(gram, features, labels, options, trace);
  if (trace != nullptr) {
    trace->primal_objective =
        svm_primal_objective(m, features, labels, options.c);
  }
  return m;
}

double svm_primal_objective(const LinearModel& model,
                            std::span<const std::vector<double>> features,
                            std::span<const int> labels, double c) {
  double w2 = 0.0;
  for (double w : model.weights) w2 += w * w;
  double loss = 0.0;
  for (std::size_t t = 0; t < features.size(); ++t) {
    loss += std::max(0.0, 1.0 - labels[t] * model.score(features[t]));
  }
  return 0.5 * w2 + c * loss;
}

OvaModel train_ova(std::span<const std::vector<double>> features,
                   std::span<const int> classes, int class_count,
                   Descriptor descriptor, const SvmOptions& options,
                   int workers) {
  check_training_set(features, classes.size());
  if (class_count < 2) {
    throw std::invalid_argument("train_ova: need at least two classes");
  }
  std::vector<std::size_t> per_class(class_count, 0);
  for (int k : classes) {
    if (k < 0 || k >= class_count) {
      throw std::invalid_argument("train_ova: class id out of range");
    }
    ++per_class[k];
  }
  for (int k = 0; k < class_count; ++k) {
    if (per_class[k] == 0) {
      throw std::invalid_argument("train_ova: class " + std::to_string(k) +
                                  " has no training samples");
    }
  }

  const GramMatrix gram(features, workers);
  OvaModel model{descriptor, features.front().size(),
                 std::vector<LinearModel>(class_count)};
  parallel_for(static_cast<std::size_t>(class_count), workers,
               [&](std::size_t k) {
                 std::vector<int> y(classes.size());
                 for (std::size_t t = 0; t < classes.size(); ++t) {
                   y[t] = classes[t] == static_cast<int>(k) ? 1 : -1;
                 }
                 model.models[k] = solve_smo(gram, features, y, options, nullptr);
                 model.models[k].class_id = static_cast<int>(k);
               });
  return model;
}

int predict(const OvaModel& model, std::span<const double> feature) {
  if (feature.size() != model.feature_dim) {
    throw std::invalid_argument("predict: feature dimension " +
                                std::to_string(feature.size()) +
                                " != model dimension " +
                                std::to_string(model.feature_dim));
  }
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < model.models.size(); ++k) {
    const double s = model.models[k].score(feature);
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(k);
    }
  }
  return best;
}

int predict(const OvaModel& model, const FeatureHistogram& feature) {
  if (feature.descriptor != model.descriptor) {
    throw std::invalid_argument("predict: feature from " +
                                descriptor_name(feature.descriptor) +
                                ", model trained on " +
                                descriptor_name(model.descriptor));
  }
  return predict(model, std::span<const double>(feature.bins));
}

std::string encode_model(const OvaModel& model) {
  std::string out = "OVAMODEL 1 " + std::to_string(model.models.size()) + " " +
                    std::to_string(model.feature_dim) + " " +
                    descriptor_name(model.descriptor) + "\n";
  for (const LinearModel& m : model.models) {
    out += format_double(m.bias);
    for (double w : m.weights) {
      out += ' ';
      out += format_double(w);
    }
    out += '\n';
  }
  return out;
}

OvaModel decode_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("model bundle: empty");
  }
  std::istringstream header(line);
  std::string magic;
  std::string descriptor;
  int version = 0;
  long classes = 0;
  long dim = 0;
  if (!(header >> magic >> version >> classes >> dim >> descriptor) ||
      magic != "OVAMODEL" || version != 1 || classes < 2 || dim < 1) {
    throw std::runtime_error("model bundle: malformed header '" + line + "'");
  }
  OvaModel model;
  try {
    model.descriptor = parse_descriptor(descriptor);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("model bundle: ") + e.what());
  }
  model.feature_dim = static_cast<std::size_t>(dim);
  for (long k = 0; k < classes; ++k) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("model bundle: missing class line");
    }
    std::istringstream row(line);
    std::string token;
    LinearModel m;
    m.class_id = static_cast<int>(k);
    if (!(row >> token)) throw std::runtime_error("model bundle: empty line");
    m.bias = parse_double(token);
    while (row >> token) m.weights.push_back(parse_double(token));
    if (m.weights.size() != model.feature_dim) {
      throw std::runtime_error("model bundle: class " + std::to_string(k) +
                               " has " + std::to_string(m.weights.size()) +
                               " weights, expected " + std::to_string(dim));
    }
    model.models.push_back(std::move(m));
  }
  return model;
}

void save_model(const std::filesystem::path& path, const OvaModel& model) {
  const std::string text = encode_model(model);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

OvaModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_model(ss.str());
}

}  // namespace seistex
