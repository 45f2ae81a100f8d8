#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treeforge/sample.hpp"
#include "treeforge/wire.hpp"

namespace treeforge {

class StatsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Metric { kTS, kTD, kBF, kUTP, kUTK };
inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::kTS, Metric::kTD, Metric::kBF,
                                                       Metric::kUTP, Metric::kUTK};
std::string_view to_string(Metric m);

struct MetricSamples {
  std::string parser_id;
  Metric metric = Metric::kTS;
  std::vector<double> values;
  double median = 0;
  double mean = 0;
  double variance = 0;  // unbiased; 0 for fewer than two values
};

/// Fills median, mean and variance from `values`.
MetricSamples summarize(std::string parser_id, Metric metric, std::vector<double> values);

struct MetricCollection {
  std::string parser_id;
  std::size_t trees = 0;
  std::size_t bf_excluded = 0;  // single-node trees, absent from the BF sample
  std::string tree_form;        // "normalized", "raw" or "mixed"
  std::array<MetricSamples, 5> metrics;  // indexed like kAllMetrics

  [[nodiscard]] const MetricSamples& operator[](Metric m) const {
    return metrics[static_cast<std::size_t>(m)];
  }
};

/// Throws StatsError("empty dataset") when `samples` is empty.
MetricCollection collect_metrics(const std::vector<LabeledSample>& samples, std::string parser_id);

/// I_x(a, b), the regularized incomplete beta function.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t distribution with `df` degrees
/// of freedom.
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t_statistic = 0;
  double degrees_of_freedom = 0;
  double p_value = 1;
  bool significant = false;
};

/// Two-sample t-test: pooled variance by default, Welch's unequal-variance
/// form when `welch` is set. Needs at least two values on each side; a zero
/// (pooled) standard error throws StatsError("degenerate samples").
TTestResult students_t_test(std::span<const double> a, std::span<const double> b,
                            double alpha = 0.01, bool welch = false);

struct SimilarityMatrix {
  std::vector<std::string> parser_ids;
  /// cells[i][j]: metrics whose means are not significantly different.
  std::vector<std::vector<std::set<Metric>>> cells;
};

SimilarityMatrix similarity_matrix(const std::vector<MetricCollection>& collections,
                                   double alpha = 0.01, bool welch = false);

OrderedJson stats_report_json(const std::vector<MetricCollection>& collections,
                              const SimilarityMatrix& matrix, double alpha, bool welch);
/// Median table followed by the similarity matrix, columns aligned.
std::string stats_report_text(const std::vector<MetricCollection>& collections,
                              const SimilarityMatrix& matrix);

}  // namespace treeforge
