#include "seistex/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "seistex/glcm.hpp"
#include "seistex/lbp.hpp"
#include "seistex/lri.hpp"
#include "seistex/metrics.hpp"
#include "seistex/semblance.hpp"
#include "seistex/slic.hpp"
#include "seistex/svm.hpp"

namespace seistex {

namespace {

template <typename... Args>
std::string describe(Args&&... args) {
  std::ostringstream out;
  out.precision(17);
  (out << ... << args);
  return out.str();
}

std::uint32_t rotate_bits(std::uint32_t code, int k, int p) {
  const std::uint64_t mask = (std::uint64_t{1} << p) - 1;
  const std::uint64_t v = code & mask;
  return static_cast<std::uint32_t>(((v << k) | (v >> (p - k))) & mask);
}

// Values on a 2^-16 grid in [0, 1): adding a constant on a coarser dyadic
// grid is then exact, so any change in a histogram is a real dependence on
// absolute level rather than rounding.
Patch dyadic_patch(int size, std::mt19937_64& rng) {
  Patch p(size);
  for (double& v : p.values()) v = static_cast<double>(rng() % 65536) / 65536.0;
  return p;
}

std::string combinatorics() {
  for (int p : {8, 16}) {
    std::set<int> labels;
    for (std::uint32_t code = 0; code < (1u << p); ++code) {
      labels.insert(riu2(code, p));
    }
    const int expected = p == 8 ? 10 : 18;
    if (static_cast<int>(labels.size()) != expected ||
        riu2_label_count(p) != expected) {
      return describe("P=", p, ": ", labels.size(), " riu2 labels, expected ",
                      expected);
    }
  }
  std::set<std::uint32_t> classes;
  for (std::uint32_t code = 0; code < 256; ++code) {
    std::uint32_t least = code;
    for (int k = 1; k < 8; ++k) least = std::min(least, rotate_bits(code, k, 8));
    classes.insert(least);
  }
  if (classes.size() != 36) {
    return describe(classes.size(), " rotation classes for P=8, expected 36");
  }
  return {};
}

std::string rotation_invariance() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int sizes[3] = {8, 16, 24};
  for (int trial = 0; trial < 10000; ++trial) {
    const int p = sizes[trial % 3];
    NeighborRing ring{p, 1.0, std::vector<double>(p), u(rng)};
    for (double& s : ring.samples) {
      // Some exact ties with the center exercise the >= branch.
      s = rng() % 8 == 0 ? ring.center : u(rng);
    }
    const int label = riu2(lbp_code(ring), p);
    NeighborRing shifted = ring;
    for (int k = 1; k < p; ++k) {
      for (int i = 0; i < p; ++i) shifted.samples[(i + k) % p] = ring.samples[i];
      const int l = riu2(lbp_code(shifted), p);
      if (l != label) {
        return describe("trial ", trial, " P=", p, " shift ", k, ": label ", l,
                        " != ", label);
      }
    }
  }
  return {};
}

std::string shift_invariance() {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const Patch p = dyadic_patch(33, rng);
    const double shift =
        static_cast<double>(static_cast<int>(rng() % 2049) - 1024) / 256.0;
    Patch q = p;
    for (double& v : q.values()) v += shift;
    const std::pair<const char*, FeatureHistogram (*)(const Patch&)> fns[] = {
        {"lbp", [](const Patch& x) { return lbp_feature(x); }},
        {"clbp", [](const Patch& x) { return clbp_feature(x); }},
        {"elbp", [](const Patch& x) { return elbp_feature(x); }},
        {"cldp", [](const Patch& x) { return cldp_feature(x); }},
        {"lri", [](const Patch& x) { return lri_feature(x); }}};
    for (const auto& [name, fn] : fns) {
      if (fn(p).bins != fn(q).bins) {
        return describe(name, " histogram changed on trial ", trial,
                        " shift ", shift);
      }
    }
  }
  return {};
}

// Attribute formulas written out over the full K x K table.
GlcmAttributes naive_glcm(const std::vector<double>& p, int k) {
  std::vector<double> pi(k, 0.0);
  std::vector<double> pj(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      pi[i] += p[i * k + j];
      pj[j] += p[i * k + j];
    }
  }
  double mi = 0.0, mj = 0.0;
  for (int i = 0; i < k; ++i) {
    mi += i * pi[i];
    mj += i * pj[i];
  }
  double vi = 0.0, vj = 0.0;
  for (int i = 0; i < k; ++i) {
    vi += (i - mi) * (i - mi) * pi[i];
    vj += (i - mj) * (i - mj) * pj[i];
  }
  GlcmAttributes a;
  double sq = 0.0, cov = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double v = p[i * k + j];
      a.contrast += (i - j) * (i - j) * v;
      if (v > 0.0) {
        a.entropy -= v * std::log(v);
        a.mutual_information += v * std::log(v / (pi[i] * pj[j]));
      }
      sq += v * v;
      a.homogeneity += v / (1.0 + (i - j) * (i - j));
      cov += (i - mi) * (j - mj) * v;
    }
  }
  a.energy = std::sqrt(sq);
  a.correlation = vi > 0.0 && vj > 0.0 ? cov / std::sqrt(vi * vj) : 0.0;
  return a;
}

std::string glcm_oracle() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int k = 8;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> p(k * k);
    double sum = 0.0;
    for (double& v : p) sum += (v = u(rng) < 0.4 ? 0.0 : u(rng));
    if (sum == 0.0) p[0] = sum = 1.0;
    for (double& v : p) v /= sum;
    const GlcmAttributes a = glcm_attributes(p, k);
    const GlcmAttributes b = naive_glcm(p, k);
    const std::pair<const char*, double> diffs[] = {
        {"contrast", a.contrast - b.contrast},
        {"entropy", a.entropy - b.entropy},
        {"energy", a.energy - b.energy},
        {"homogeneity", a.homogeneity - b.homogeneity},
        {"correlation", a.correlation - b.correlation},
        {"mutual information", a.mutual_information - b.mutual_information}};
    for (const auto& [name, d] : diffs) {
      if (!(std::abs(d) <= 1e-12)) {
        return describe(name, " differs by ", d, " on trial ", trial);
      }
    }
  }
  Patch flat(9);
  for (double& v : flat.values()) v = 0.6;
  for (Offset off : kGlcmDirections) {
    const GlcmAttributes a = glcm_attributes(glcm(quantize(flat, 64), off));
    if (a.contrast != 0.0 || a.energy != 1.0 || a.homogeneity != 1.0 ||
        a.entropy != 0.0 || a.mutual_information != 0.0) {
      return "constant patch attributes are not exact";
    }
  }
  return {};
}

ScoreReport metric_oracle(std::span<const int> pred, std::span<const int> truth,
                          int classes) {
  const double n = static_cast<double>(pred.size());
  ScoreReport r;
  double hits = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i];
  r.pa = hits / n;
  for (int c = 0; c < classes; ++c) {
    double both = 0.0, in_truth = 0.0, in_pred = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      both += pred[i] == c && truth[i] == c;
      in_truth += truth[i] == c;
      in_pred += pred[i] == c;
    }
    if (in_truth == 0.0) {
      const double vacuous = in_pred == 0.0 ? 1.0 : 0.0;
      r.mca += vacuous;
      r.miu += vacuous;
      continue;
    }
    const double iu = both / (in_truth + in_pred - both);
    r.mca += both / in_truth;
    r.miu += iu;
    r.fwiu += in_truth * iu;
  }
  r.mca /= classes;
  r.miu /= classes;
  r.fwiu /= n;
  return r;
}

std::string metric_checks() {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    LabelGrid truth(20, 20);
    LabelGrid pred(20, 20);
    const int truth_classes = trial % 4 == 0 ? 3 : 4;
    for (int r = 0; r < 20; ++r) {
      for (int c = 0; c < 20; ++c) {
        truth.at(r, c) = static_cast<int>(rng() % truth_classes);
        pred.at(r, c) = rng() % 2 ? truth.at(r, c) : static_cast<int>(rng() % 4);
      }
    }
    const ScoreReport a = compute_metrics(confusion_matrix(pred, truth, 4));
    const ScoreReport b = metric_oracle(pred.labels(), truth.labels(), 4);
    const double worst = std::max({std::abs(a.pa - b.pa), std::abs(a.mca - b.mca),
                                   std::abs(a.miu - b.miu),
                                   std::abs(a.fwiu - b.fwiu)});
    if (!(worst <= 1e-12)) {
      return describe("trial ", trial, ": deviation ", worst);
    }
  }
  const ConfusionMatrix worked{2, {3, 1, 0, 4}};
  const ScoreReport w = compute_metrics(worked);
  if (w.pa != 0.875 || w.mca != 0.875 || w.miu != 0.775 || w.fwiu != 0.775) {
    return describe("worked matrix gave (", w.pa, ", ", w.mca, ", ", w.miu,
                    ", ", w.fwiu, ")");
  }
  return {};
}

std::string lri_checks() {
  const auto east = [](std::vector<double> run) {
    Patch p(9);
    for (double& v : p.values()) v = 0.0;
    for (std::size_t j = 0; j < run.size(); ++j) p.at(4, 5 + j) = run[j];
    return lri_a_code(p, {4, 4}, 0, 1.0, 3);
  };
  if (const int a = east({0.2, -0.3, 0.0}); a != 0) {
    return describe("flat case gave ", a);
  }
  if (const int a = east({5.0, 5.0, 0.5}); a != 2) {
    return describe("run of two gave ", a);
  }
  if (const int a = east({-5.0, -5.0, -5.0, -5.0}); a != -3) {
    return describe("capped run gave ", a);
  }
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Patch p(15);
    for (double& v : p.values()) v = u(rng);
    Patch n = p;
    for (double& v : n.values()) v = -v;
    const double t = 0.25 + 0.5 * std::abs(u(rng));
    for (int r = 0; r < 15; ++r) {
      for (int c = 0; c < 15; ++c) {
        for (int d = 0; d < 8; ++d) {
          const int a = lri_a_code(p, {r, c}, d, t, 3);
          const int b = lri_a_code(n, {r, c}, d, t, 3);
          if (a != -b) {
            return describe("negation broke antisymmetry on trial ", trial);
          }
        }
      }
    }
  }
  return {};
}

std::string semblance_checks() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> w(9);
  for (int trial = 0; trial < 10000; ++trial) {
    for (double& v : w) v = u(rng);
    const double s = semblance_coefficient(w, 3, 3);
    if (!(s >= 0.0 && s <= 1.0)) {
      return describe("S = ", s, " outside [0, 1] on trial ", trial);
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int traces = 2 + static_cast<int>(rng() % 7);
    std::vector<double> same(3 * traces);
    std::vector<double> single(3 * traces, 0.0);
    const int active = static_cast<int>(rng() % traces);
    for (int t = 0; t < 3; ++t) {
      const double a = u(rng);
      for (int j = 0; j < traces; ++j) same[t * traces + j] = a;
      single[t * traces + active] = a;
    }
    const double s1 = semblance_coefficient(same, 3, traces);
    const double sj = semblance_coefficient(single, 3, traces);
    if (std::abs(s1 - 1.0) > 1e-12) {
      return describe("identical traces gave ", s1);
    }
    if (std::abs(sj - 1.0 / traces) > 1e-12) {
      return describe("one active trace of ", traces, " gave ", sj);
    }
  }
  return {};
}

std::string slic_checks() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    SectionGrid g(128, 128);
    const double fr = 0.05 + 0.3 * u(rng);
    const double fc = 0.05 + 0.3 * u(rng);
    const double noise = trial % 2 ? 0.5 : 0.05;
    for (int r = 0; r < 128; ++r) {
      for (int c = 0; c < 128; ++c) {
        g.at(r, c) = 0.5 + 0.25 * std::sin(fr * r) * std::cos(fc * c) +
                     noise * (u(rng) - 0.5);
      }
    }
    const int s = 8 + static_cast<int>(rng() % 18);
    const SuperpixelMap m = slic_segment(g, {s, 0.5, 10});
    if (m.assignment.size() != 128u * 128u) return "assignment size mismatch";
    std::vector<long> sizes(m.count, 0);
    for (int id : m.assignment) {
      if (id < 0 || id >= m.count) {
        return describe("id ", id, " outside [0, ", m.count, ")");
      }
      ++sizes[id];
    }
    // Flood fill from the first pixel of each id must reach all of it.
    std::vector<char> seen(m.assignment.size(), 0);
    std::vector<int> stack;
    std::vector<char> started(m.count, 0);
    for (int p = 0; p < static_cast<int>(m.assignment.size()); ++p) {
      const int id = m.assignment[p];
      if (seen[p]) continue;
      if (started[id]) {
        return describe("trial ", trial, ": superpixel ", id,
                        " is not 4-connected");
      }
      started[id] = 1;
      long reached = 0;
      stack.assign(1, p);
      seen[p] = 1;
      while (!stack.empty()) {
        const int q = stack.back();
        stack.pop_back();
        ++reached;
        const int r = q / 128, c = q % 128;
        const int nb[4] = {r > 0 ? q - 128 : -1, r < 127 ? q + 128 : -1,
                           c > 0 ? q - 1 : -1, c < 127 ? q + 1 : -1};
        for (int x : nb) {
          if (x >= 0 && !seen[x] && m.assignment[x] == id) {
            seen[x] = 1;
            stack.push_back(x);
          }
        }
      }
      if (reached != sizes[id]) {
        return describe("trial ", trial, ": superpixel ", id,
                        " is not 4-connected");
      }
    }
    for (int id = 0; id < m.count; ++id) {
      if (sizes[id] == 0) return describe("superpixel ", id, " is empty");
    }
  }
  return {};
}

std::string svm_checks() {
  std::mt19937_64 rng(808);
  std::normal_distribution<double> g(0.0, 1.0);
  constexpr int dim = 18;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> w(dim);
    for (double& v : w) v = g(rng);
    const double b = g(rng);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    int positives = 0;
    while (x.size() < 200) {
      std::vector<double> p(dim);
      double s = b;
      for (int k = 0; k < dim; ++k) s += (p[k] = 2.0 * g(rng)) * w[k];
      if (std::abs(s) < 0.5) continue;
      // Keep both classes represented.
      if (x.size() == 199 && (positives == 0 || positives == 199)) continue;
      positives += s > 0;
      x.push_back(std::move(p));
      y.push_back(s > 0 ? 1 : -1);
    }
    SvmTrace trace;
    trace.record_objective = true;
    SvmOptions opt;
    opt.c = 1e4;
    const LinearModel m = train_binary_svm(x, y, opt, &trace);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(y[i] * m.score(x[i]) > 0.0)) {
        return describe("trial ", trial, ": training point ", i,
                        " misclassified");
      }
    }
    for (std::size_t i = 1; i < trace.dual_objective.size(); ++i) {
      const double prev = trace.dual_objective[i - 1];
      if (trace.dual_objective[i] > prev + 1e-9 * (1.0 + std::abs(prev))) {
        return describe("trial ", trial, ": objective rose at step ", i);
      }
    }
  }
  return {};
}

}  // namespace

std::vector<PropertyCheck> property_checks() {
  return {
      {"descriptor combinatorics", 1.0, combinatorics},
      {"rotation invariance", 5.0, rotation_invariance},
      {"shift invariance", 30.0, shift_invariance},
      {"glcm oracle", 5.0, glcm_oracle},
      {"metric oracle", 10.0, metric_checks},
      {"lri-a cases", 10.0, lri_checks},
      {"semblance bounds", 5.0, semblance_checks},
      {"slic partition", 60.0, slic_checks},
      {"svm separability", 60.0, svm_checks},
  };
}

CheckResult run_check(const PropertyCheck& check) {
  CheckResult r;
  r.name = check.name;
  r.limit_seconds = check.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.detail = check.run();
    r.passed = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  if (r.passed && r.seconds >= r.limit_seconds) {
    r.passed = false;
    r.detail = describe("took longer than ", r.limit_seconds, " s");
  }
  return r;
}

std::string format_check(const CheckResult& r) {
  char head[160];
  std::snprintf(head, sizeof(head), "%s %s (%.2f s, limit %.0f s)",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.limit_seconds);
  return r.detail.empty() ? std::string(head) : std::string(head) + ": " + r.detail;
}

}  // namespace seistex
