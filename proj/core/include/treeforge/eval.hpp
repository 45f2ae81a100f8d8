#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treeforge {

class EvalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Multiset subtoken overlap. Both lists empty scores 1 everywhere; one empty
/// side scores 0.
PrecisionRecall subtoken_prf(std::span<const std::string> predicted,
                             std::span<const std::string> reference);

/// Character n-gram F-score with orders 1..6 and beta 2, whitespace removed
/// before n-gram extraction. Precision and recall are averaged over the orders
/// at which both strings have n-grams. Both empty gives 1, one empty gives 0.
double chrf(std::string_view predicted, std::string_view reference);

struct EvalScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double chrf = 0;
};

struct PredictionPair {
  std::vector<std::string> reference;
  std::vector<std::string> predicted;
};

/// Scores one example; ChrF compares the subtokens joined by single spaces.
EvalScores score_pair(const PredictionPair& pair);

/// Macro average over examples. Throws EvalError for an empty list.
EvalScores corpus_scores(const std::vector<PredictionPair>& pairs);

/// Lines of `reference<TAB>prediction`, each side '|'-joined subtokens.
std::vector<PredictionPair> read_predictions(std::istream& in);
std::vector<PredictionPair> read_predictions_file(const std::filesystem::path& path);

enum class EvalMetric { kPrecision, kRecall, kF1, kChrf };
EvalMetric eval_metric_from_string(std::string_view name);

std::vector<double> per_example(const std::vector<PredictionPair>& pairs, EvalMetric metric);

struct BootstrapResult {
  double prob_a_beats_b = 0;
  std::size_t resamples = 0;
  std::uint64_t seed = 0;
};

/// Paired bootstrap. Resample r draws n indices with replacement from a
/// SplitMix64 stream seeded with derive_seed(seed, r); a wins when its sum
/// over the drawn indices exceeds b's and a tie counts half. The result does
/// not depend on `workers`.
BootstrapResult paired_bootstrap(std::span<const double> scores_a, std::span<const double> scores_b,
                                 std::size_t resamples, std::uint64_t seed, unsigned workers = 1);

}  // namespace treeforge
