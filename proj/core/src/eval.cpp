#include "treeforge/eval.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <thread>
#include <unordered_map>

#include "treeforge/random.hpp"

namespace treeforge {
namespace {

constexpr int kChrfOrder = 6;
constexpr double kChrfBeta = 2.0;

bool is_ascii_space(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

/// Code points of `s` without whitespace; invalid bytes map to U+FFFD.
std::u32string code_points(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    const auto cont = [&](std::size_t k) {
      return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0 && b0 >= 0xC2 && cont(1)) {
      cp = ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
      cp = ((b0 & 0x0Fu) << 12) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6) |
           (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0 && b0 <= 0xF4 && cont(1) && cont(2) && cont(3)) {
      cp = ((b0 & 0x07u) << 18) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12) |
           ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6) | (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
      len = 4;
    }
    if (!is_ascii_space(cp)) out.push_back(cp);
    i += len;
  }
  return out;
}

std::map<std::u32string_view, std::size_t> ngrams(const std::u32string& text, std::size_t n) {
  std::map<std::u32string_view, std::size_t> counts;
  const std::u32string_view view(text);
  for (std::size_t i = 0; i + n <= text.size(); ++i) ++counts[view.substr(i, n)];
  return counts;
}

std::vector<std::string> split_bar(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find('|', start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string join_space(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ' ';
    out += parts[i];
  }
  return out;
}

}  // namespace

PrecisionRecall subtoken_prf(std::span<const std::string> predicted,
                             std::span<const std::string> reference) {
  if (predicted.empty() && reference.empty()) return {1.0, 1.0, 1.0};
  if (predicted.empty() || reference.empty()) return {0.0, 0.0, 0.0};
  std::unordered_map<std::string_view, std::size_t> ref_counts;
  for (const auto& t : reference) ++ref_counts[t];
  std::size_t matched = 0;
  for (const auto& t : predicted) {
    auto it = ref_counts.find(t);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  PrecisionRecall r;
  r.precision = static_cast<double>(matched) / static_cast<double>(predicted.size());
  r.recall = static_cast<double>(matched) / static_cast<double>(reference.size());
  r.f1 = r.precision + r.recall > 0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

double chrf(std::string_view predicted, std::string_view reference) {
  const std::u32string hyp = code_points(predicted);
  const std::u32string ref = code_points(reference);
  if (hyp.empty() && ref.empty()) return 1.0;
  if (hyp.empty() || ref.empty()) return 0.0;

  double avg_precision = 0.0;
  double avg_recall = 0.0;
  int effective_order = 0;
  for (std::size_t n = 1; n <= kChrfOrder; ++n) {
    const auto h = ngrams(hyp, n);
    const auto r = ngrams(ref, n);
    std::size_t n_hyp = 0;
    std::size_t n_ref = 0;
    std::size_t n_match = 0;
    for (const auto& [g, c] : h) {
      n_hyp += c;
      if (const auto it = r.find(g); it != r.end()) n_match += std::min(c, it->second);
    }
    for (const auto& [g, c] : r) n_ref += c;
    if (n_hyp == 0 || n_ref == 0) continue;
    avg_precision += static_cast<double>(n_match) / static_cast<double>(n_hyp);
    avg_recall += static_cast<double>(n_match) / static_cast<double>(n_ref);
    ++effective_order;
  }
  avg_precision /= effective_order;
  avg_recall /= effective_order;
  if (avg_precision + avg_recall == 0.0) return 0.0;
  const double factor = kChrfBeta * kChrfBeta;
  return (1.0 + factor) * avg_precision * avg_recall / (factor * avg_precision + avg_recall);
}

EvalScores score_pair(const PredictionPair& pair) {
  const PrecisionRecall prf = subtoken_prf(pair.predicted, pair.reference);
  return {prf.precision, prf.recall, prf.f1, chrf(join_space(pair.predicted), join_space(pair.reference))};
}

EvalScores corpus_scores(const std::vector<PredictionPair>& pairs) {
  if (pairs.empty()) throw EvalError("no examples to score");
  EvalScores total;
  for (const auto& p : pairs) {
    const EvalScores s = score_pair(p);
    total.precision += s.precision;
    total.recall += s.recall;
    total.f1 += s.f1;
    total.chrf += s.chrf;
  }
  const auto n = static_cast<double>(pairs.size());
  return {total.precision / n, total.recall / n, total.f1 / n, total.chrf / n};
}

std::vector<PredictionPair> read_predictions(std::istream& in) {
  std::vector<PredictionPair> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw EvalError("line " + std::to_string(number) + ": expected exactly one tab");
    }
    out.push_back(PredictionPair{split_bar(std::string_view(line).substr(0, tab)),
                                 split_bar(std::string_view(line).substr(tab + 1))});
  }
  return out;
}

std::vector<PredictionPair> read_predictions_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_predictions(in);
  } catch (const EvalError& e) {
    throw EvalError(path.string() + ": " + e.what());
  }
}

EvalMetric eval_metric_from_string(std::string_view name) {
  if (name == "precision") return EvalMetric::kPrecision;
  if (name == "recall") return EvalMetric::kRecall;
  if (name == "f1") return EvalMetric::kF1;
  if (name == "chrf") return EvalMetric::kChrf;
  throw EvalError("unknown metric '" + std::string(name) + "'");
}

std::vector<double> per_example(const std::vector<PredictionPair>& pairs, EvalMetric metric) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const EvalScores s = score_pair(p);
    switch (metric) {
      case EvalMetric::kPrecision: out.push_back(s.precision); break;
      case EvalMetric::kRecall: out.push_back(s.recall); break;
      case EvalMetric::kF1: out.push_back(s.f1); break;
      case EvalMetric::kChrf: out.push_back(s.chrf); break;
    }
  }
  return out;
}

BootstrapResult paired_bootstrap(std::span<const double> scores_a, std::span<const double> scores_b,
                                 std::size_t resamples, std::uint64_t seed, unsigned workers) {
  if (scores_a.size() != scores_b.size()) {
    throw EvalError("paired bootstrap needs equally long score lists (" + std::to_string(scores_a.size()) +
                    " vs " + std::to_string(scores_b.size()) + ")");
  }
  if (scores_a.empty()) throw EvalError("paired bootstrap needs at least one example");
  if (resamples == 0) throw EvalError("resamples must be positive");

  const std::size_t n = scores_a.size();
  // Half-wins: 2 per win, 1 per tie, so the total is an exact integer.
  const auto half_wins = [&](std::size_t first, std::size_t last) {
    std::uint64_t total = 0;
    for (std::size_t r = first; r < last; ++r) {
      SplitMix64 rng(derive_seed(seed, r));
      double sum_a = 0.0;
      double sum_b = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(uniform_index(rng, n));
        sum_a += scores_a[i];
        sum_b += scores_b[i];
      }
      total += sum_a > sum_b ? 2 : sum_a == sum_b ? 1 : 0;
    }
    return total;
  };

  const std::size_t threads = std::clamp<std::size_t>(workers, 1, resamples);
  std::vector<std::uint64_t> partial(threads, 0);
  if (threads == 1) {
    partial[0] = half_wins(0, resamples);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        partial[t] = half_wins(resamples * t / threads, resamples * (t + 1) / threads);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::uint64_t total = 0;
  for (const auto p : partial) total += p;
  return BootstrapResult{static_cast<double>(total) / (2.0 * static_cast<double>(resamples)), resamples, seed};
}

}  // namespace treeforge
