#include "treeforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "treeforge/metrics.hpp"

namespace treeforge {
namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b); converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) break;
  }
  return h;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string metric_list(const std::set<Metric>& metrics) {
  std::string out;
  for (const Metric m : kAllMetrics) {
    if (!metrics.contains(m)) continue;
    if (!out.empty()) out += ',';
    out += to_string(m);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kTS: return "TS";
    case Metric::kTD: return "TD";
    case Metric::kBF: return "BF";
    case Metric::kUTP: return "UTP";
    case Metric::kUTK: return "UTK";
  }
  return "?";
}

MetricSamples summarize(std::string parser_id, Metric metric, std::vector<double> values) {
  MetricSamples s;
  s.parser_id = std::move(parser_id);
  s.metric = metric;
  if (!values.empty()) {
    s.median = median_of(values);
    s.mean = mean_of(values);
    s.variance = variance_of(values, s.mean);
  }
  s.values = std::move(values);
  return s;
}

MetricCollection collect_metrics(const std::vector<LabeledSample>& samples, std::string parser_id) {
  if (samples.empty()) throw StatsError("empty dataset");
  std::array<std::vector<double>, 5> values;
  MetricCollection out;
  out.parser_id = parser_id;
  out.trees = samples.size();
  const auto normalized = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const LabeledSample& s) { return s.normalized; }));
  out.tree_form = normalized == samples.size() ? "normalized" : normalized == 0 ? "raw" : "mixed";
  for (const auto& s : samples) {
    const TreeMetrics m = compute_metrics(s.tree);
    values[0].push_back(static_cast<double>(m.tree_size));
    values[1].push_back(static_cast<double>(m.tree_depth));
    if (m.branching_factor) {
      values[2].push_back(*m.branching_factor);
    } else {
      ++out.bf_excluded;
    }
    values[3].push_back(static_cast<double>(m.unique_types));
    values[4].push_back(static_cast<double>(m.unique_tokens));
  }
  for (std::size_t i = 0; i < kAllMetrics.size(); ++i) {
    out.metrics[i] = summarize(parser_id, kAllMetrics[i], std::move(values[i]));
  }
  return out;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0) || !(x >= 0 && x <= 1)) {
    throw StatsError("incomplete beta: arguments out of domain");
  }
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0)) throw StatsError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(df / 2.0, 0.5, x), 0.0, 1.0);
}

TTestResult students_t_test(std::span<const double> a, std::span<const double> b, double alpha,
                            bool welch) {
  if (a.size() < 2 || b.size() < 2) throw StatsError("t-test needs at least two values per sample");
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = variance_of(a, ma);
  const double vb = variance_of(b, mb);

  TTestResult r;
  double se = 0.0;
  if (welch) {
    const double qa = va / na;
    const double qb = vb / nb;
    se = std::sqrt(qa + qb);
    if (se > 0) r.degrees_of_freedom = (qa + qb) * (qa + qb) / (qa * qa / (na - 1) + qb * qb / (nb - 1));
  } else {
    r.degrees_of_freedom = na + nb - 2;
    const double pooled = ((na - 1) * va + (nb - 1) * vb) / r.degrees_of_freedom;
    se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  }
  if (!(se > 0)) throw StatsError("degenerate samples");
  r.t_statistic = (ma - mb) / se;
  r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
  r.significant = r.p_value < alpha;
  return r;
}

SimilarityMatrix similarity_matrix(const std::vector<MetricCollection>& collections, double alpha,
                                   bool welch) {
  if (collections.size() < 2) throw StatsError("similarity matrix needs at least two datasets");
  SimilarityMatrix m;
  const std::size_t n = collections.size();
  for (const auto& c : collections) m.parser_ids.push_back(c.parser_id);
  m.cells.assign(n, std::vector<std::set<Metric>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const Metric metric : kAllMetrics) {
        const auto r = students_t_test(collections[i][metric].values, collections[j][metric].values, alpha, welch);
        if (!r.significant) {
          m.cells[i][j].insert(metric);
          m.cells[j][i].insert(metric);
        }
      }
    }
  }
  return m;
}

OrderedJson stats_report_json(const std::vector<MetricCollection>& collections,
                              const SimilarityMatrix& matrix, double alpha, bool welch) {
  OrderedJson j;
  j["alpha"] = alpha;
  j["test"] = welch ? "welch" : "student";
  j["parsers"] = OrderedJson::array();
  for (const auto& c : collections) {
    OrderedJson p;
    p["parserId"] = c.parser_id;
    p["trees"] = c.trees;
    p["bfExcluded"] = c.bf_excluded;
    p["treeForm"] = c.tree_form;
    p["metrics"] = OrderedJson::object();
    for (const Metric metric : kAllMetrics) {
      const auto& s = c[metric];
      OrderedJson e;
      e["n"] = s.values.size();
      e["median"] = s.median;
      e["mean"] = s.mean;
      e["variance"] = s.variance;
      p["metrics"][std::string(to_string(metric))] = std::move(e);
    }
    j["parsers"].push_back(std::move(p));
  }
  j["similar"] = OrderedJson::array();
  for (std::size_t r = 0; r < matrix.cells.size(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (const auto& cell : matrix.cells[r]) {
      OrderedJson names = OrderedJson::array();
      for (const Metric metric : kAllMetrics) {
        if (cell.contains(metric)) names.push_back(to_string(metric));
      }
      row.push_back(std::move(names));
    }
    j["similar"].push_back(std::move(row));
  }
  return j;
}

std::string stats_report_text(const std::vector<MetricCollection>& collections,
                              const SimilarityMatrix& matrix) {
  const auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  std::size_t name_w = 6;
  for (const auto& c : collections) name_w = std::max(name_w, c.parser_id.size());

  std::ostringstream os;
  os << pad("parser", name_w);
  for (const Metric metric : kAllMetrics) os << "  " << pad(std::string(to_string(metric)), 8);
  os << "\n";
  for (const auto& c : collections) {
    os << pad(c.parser_id, name_w);
    for (const Metric metric : kAllMetrics) os << "  " << pad(fixed(c[metric].median, 2), 8);
    os << "\n";
  }

  std::vector<std::vector<std::string>> cells(matrix.cells.size());
  std::size_t cell_w = 1;
  for (const auto& id : matrix.parser_ids) cell_w = std::max(cell_w, id.size());
  for (std::size_t r = 0; r < matrix.cells.size(); ++r) {
    for (std::size_t c = 0; c < matrix.cells[r].size(); ++c) {
      cells[r].push_back(r == c ? "" : metric_list(matrix.cells[r][c]));
      cell_w = std::max(cell_w, cells[r].back().size());
    }
  }
  os << "\n" << pad("", name_w);
  for (const auto& id : matrix.parser_ids) os << "  " << pad(id, cell_w);
  os << "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    os << pad(matrix.parser_ids[r], name_w);
    for (const auto& cell : cells[r]) os << "  " << pad(cell, cell_w);
    os << "\n";
  }
  return os.str();
}

}  // namespace treeforge
