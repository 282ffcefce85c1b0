#include "seistex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace seistex {

std::uint64_t ConfusionMatrix::truth_total(int j) const {
  std::uint64_t t = 0;
  for (int i = 0; i < classes; ++i) t += at(j, i);
  return t;
}

std::uint64_t ConfusionMatrix::predicted_total(int i) const {
  std::uint64_t t = 0;
  for (int j = 0; j < classes; ++j) t += at(j, i);
  return t;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (auto v : counts) t += v;
  return t;
}

ConfusionMatrix confusion_matrix(const LabelGrid& predicted,
                                 const LabelGrid& truth, int classes) {
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
    throw std::invalid_argument("confusion_matrix: grid shapes differ");
  }
  if (classes < 1) {
    throw std::invalid_argument("confusion_matrix: need at least one class");
  }
  ConfusionMatrix cm{classes, std::vector<std::uint64_t>(
                                  static_cast<std::size_t>(classes) * classes)};
  const auto p = predicted.labels();
  const auto t = truth.labels();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0 || p[k] >= classes || t[k] < 0 || t[k] >= classes) {
      throw std::invalid_argument("confusion_matrix: label out of range");
    }
    ++cm.counts[static_cast<std::size_t>(t[k]) * classes + p[k]];
  }
  return cm;
}

ScoreReport compute_metrics(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (cm.classes < 1 || total == 0) {
    throw std::invalid_argument("compute_metrics: empty confusion matrix");
  }
  double correct = 0.0;
  double class_acc = 0.0;
  double iu = 0.0;
  double weighted_iu = 0.0;
  for (int i = 0; i < cm.classes; ++i) {
    const double nii = static_cast<double>(cm.at(i, i));
    const double ti = static_cast<double>(cm.truth_total(i));
    const double union_size =
        ti + static_cast<double>(cm.predicted_total(i)) - nii;
    correct += nii;
    if (ti > 0.0) {
      class_acc += nii / ti;
    } else {
      class_acc += union_size == 0.0 ? 1.0 : 0.0;
    }
    const double class_iu = union_size > 0.0 ? nii / union_size : 1.0;
    iu += class_iu;
    weighted_iu += ti * class_iu;
  }
  const double n = static_cast<double>(total);
  return {correct / n, class_acc / cm.classes, iu / cm.classes,
          weighted_iu / n};
}

std::string format_report(const ScoreReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "pa = %.4f\nmca = %.4f\nmiu = %.4f\nfwiu = %.4f\n", r.pa, r.mca,
                r.miu, r.fwiu);
  return buf;
}

std::vector<unsigned char> render_labels(
    const LabelGrid& labels, ClassSet set,
    const std::optional<SectionGrid>& background) {
  if (background && (background->rows() != labels.rows() ||
                     background->cols() != labels.cols())) {
    throw std::invalid_argument("render_labels: background shape differs");
  }
  const auto palette = class_palette(set);
  const std::string header = "P6\n" + std::to_string(labels.cols()) + " " +
                             std::to_string(labels.rows()) + "\n255\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(header.size() + labels.size() * 3);
  for (int r = 0; r < labels.rows(); ++r) {
    for (int c = 0; c < labels.cols(); ++c) {
      const int k = labels.at(r, c);
      if (k < 0 || k >= static_cast<int>(palette.size())) {
        throw std::invalid_argument("render_labels: label out of range");
      }
      const Rgb& color = palette[k];
      for (int ch = 0; ch < 3; ++ch) {
        if (!background) {
          out.push_back(color[ch]);
        } else {
          const double gray = std::clamp(background->at(r, c), 0.0, 1.0) * 255.0;
          const double v = 0.5 * color[ch] + 0.5 * gray;
          out.push_back(static_cast<unsigned char>(std::lround(v)));
        }
      }
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path,
                const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::vector<unsigned char>(text.begin(), text.end()));
}

}  // namespace seistex
