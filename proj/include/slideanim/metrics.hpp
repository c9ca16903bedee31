#pragma once

#include <array>
#include <string>
#include <vector>

#include "slideanim/grammar.hpp"

namespace slideanim {

// Lowercases, splits on whitespace, strips punctuation from token edges;
// numbers like "1.5" stay single tokens.
std::vector<std::string> tokenize(const std::string& text);

struct BleuBreakdown {
  std::array<double, 4> precisions = {0, 0, 0, 0};  // clipped p_1..p_4
  std::array<double, 4> weights = {0.25, 0.25, 0.25, 0.25};
  double brevity_penalty = 0.0;
  std::size_t candidate_len = 0;
  std::size_t reference_len = 0;  // reference length closest to the candidate
  double score = 0.0;
};

// No smoothing: any zero precision zeroes the score. An empty candidate
// scores 0 with brevity_penalty reported as 0.
BleuBreakdown bleu4(const std::vector<std::string>& candidate,
                    const std::vector<std::vector<std::string>>& references);
BleuBreakdown bleu4(const std::vector<std::string>& candidate,
                    const std::vector<std::string>& reference);

enum class RougeVariant { N1, N2, L };

struct RougeBreakdown {
  RougeVariant variant = RougeVariant::N1;
  std::size_t matched = 0;  // matched n-grams, or LCS length for L
  std::size_t total = 0;    // reference n-grams, or reference length for L
  bool degenerate = false;  // empty reference
  double score = 0.0;
};

RougeBreakdown rouge(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, RougeVariant variant);

struct SpiceBreakdown {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Tuple-set F1 over action units: each unit contributes (element),
// (element, category), (element, category, effect), and one
// (element, param, value) tuple per present parameter.
SpiceBreakdown spice_lite(const std::vector<ActionUnit>& candidate,
                          const std::vector<ActionUnit>& reference);
std::vector<std::string> spice_tuples(const std::vector<ActionUnit>& units);

struct CodaPair {
  std::size_t reference_index = 0;   // 0-based
  std::size_t prediction_index = 0;  // 0-based
  double detail = 0.0;               // 1, 0.5 or 0
};

struct CodaBreakdown {
  std::vector<CodaPair> matches;
  std::size_t lcs_len = 0;
  double coverage = 0.0;
  double order = 0.0;
  double detail = 0.0;
};

// Left-to-right nearest match: each reference unit pairs with the
// lowest-index unmatched prediction unit sharing its (element, category)
// key. Effect and parameters do not gate matching.
std::vector<CodaPair> coda_match(const std::vector<ActionUnit>& prediction,
                                 const std::vector<ActionUnit>& reference);

// coverage = |M|/n, order = LCS of the matched orderings / n (1 when n = 0),
// detail = mean per-pair parameter score (0 when M is empty).
CodaBreakdown coda_score(const std::vector<ActionUnit>& prediction,
                         const std::vector<ActionUnit>& reference);

struct PairReport {
  double bleu4 = 0.0;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double spice = 0.0;
  double coda_coverage = 0.0;
  double coda_order = 0.0;
  double coda_detail = 0.0;
};

struct MetricConfig {
  std::string tokenizer = "whitespace_punct_v1";
  int coda_repetitions = 1;  // deterministic decomposition needs one
};

struct MetricReport {
  std::vector<PairReport> pairs;
  PairReport means;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  MetricConfig config;

  std::string to_csv() const;      // one row per pair, stable column names
  std::string to_summary() const;  // plain-text corpus summary
};

PairReport evaluate_pair(const std::string& prediction, const std::string& reference);
MetricReport evaluate_corpus(const std::vector<std::pair<std::string, std::string>>& pairs,
                             const MetricConfig& config = {});

}  // namespace slideanim
