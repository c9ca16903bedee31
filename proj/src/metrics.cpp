#include "slideanim/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "slideanim/catalog.hpp"

namespace slideanim {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) break;
    std::size_t begin = start;
    std::size_t end = i;
    auto is_edge_punct = [&text](std::size_t pos) {
      unsigned char c = static_cast<unsigned char>(text[pos]);
      return c < 128 && std::ispunct(c);
    };
    while (begin < end && is_edge_punct(begin)) ++begin;
    while (end > begin && is_edge_punct(end - 1)) --end;
    if (begin == end) continue;
    std::string token = text.substr(begin, end - begin);
    std::transform(token.begin(), token.end(), token.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    tokens.push_back(std::move(token));
  }
  return tokens;
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                    tokens.begin() + static_cast<std::ptrdiff_t>(i + n))]++;
  }
  return counts;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

BleuBreakdown bleu4(const std::vector<std::string>& candidate,
                    const std::vector<std::vector<std::string>>& references) {
  if (references.empty()) {
    throw std::invalid_argument("bleu4 requires at least one reference");
  }
  BleuBreakdown out;
  out.candidate_len = candidate.size();

  // Effective reference length: closest to the candidate, ties to shorter.
  std::size_t r = references.front().size();
  for (const auto& ref : references) {
    auto dist = [&](std::size_t len) {
      return len > candidate.size() ? len - candidate.size() : candidate.size() - len;
    };
    if (dist(ref.size()) < dist(r) || (dist(ref.size()) == dist(r) && ref.size() < r)) {
      r = ref.size();
    }
  }
  out.reference_len = r;

  if (candidate.empty()) {
    out.brevity_penalty = 0.0;  // documented guard for the 1 - r/c singularity
    out.score = 0.0;
    return out;
  }

  for (std::size_t n = 1; n <= 4; ++n) {
    NgramCounts cand = ngram_counts(candidate, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : ngram_counts(ref, n)) {
        std::size_t& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t total = 0, matched = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(count, it->second);
    }
    out.precisions[n - 1] = total == 0 ? 0.0 : static_cast<double>(matched) / total;
  }

  const double c = static_cast<double>(out.candidate_len);
  out.brevity_penalty = out.candidate_len > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / c);

  bool zero = false;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (out.precisions[n] <= 0.0) {
      zero = true;
      break;
    }
    log_sum += out.weights[n] * std::log(out.precisions[n]);
  }
  out.score = zero ? 0.0 : out.brevity_penalty * std::exp(log_sum);
  return out;
}

BleuBreakdown bleu4(const std::vector<std::string>& candidate,
                    const std::vector<std::string>& reference) {
  return bleu4(candidate, std::vector<std::vector<std::string>>{reference});
}

RougeBreakdown rouge(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, RougeVariant variant) {
  RougeBreakdown out;
  out.variant = variant;
  if (reference.empty()) {
    out.degenerate = true;
    return out;
  }

  if (variant == RougeVariant::L) {
    out.matched = lcs_length(reference, candidate);
    out.total = reference.size();
  } else {
    const std::size_t n = variant == RougeVariant::N1 ? 1 : 2;
    NgramCounts ref = ngram_counts(reference, n);
    NgramCounts cand = ngram_counts(candidate, n);
    for (const auto& [gram, count] : ref) {
      out.total += count;
      auto it = cand.find(gram);
      if (it != cand.end()) out.matched += std::min(count, it->second);
    }
    if (out.total == 0) {  // reference shorter than n
      out.degenerate = true;
      return out;
    }
  }
  out.score = static_cast<double>(out.matched) / static_cast<double>(out.total);
  return out;
}

namespace {

const char* direction_word(Direction d) { return to_string(d); }

}  // namespace

std::vector<std::string> spice_tuples(const std::vector<ActionUnit>& units) {
  std::set<std::string> tuples;
  for (const auto& unit : units) {
    const std::string& el = unit.element;
    const std::string cat = to_string(unit.category);
    tuples.insert(el);
    tuples.insert(el + "|" + cat);
    if (!unit.effect.empty()) tuples.insert(el + "|" + cat + "|" + unit.effect);
    if (unit.direction) tuples.insert(el + "|direction|" + direction_word(*unit.direction));
    if (unit.duration_s) tuples.insert(el + "|duration|" + format_seconds(*unit.duration_s));
    if (unit.delay_s) tuples.insert(el + "|delay|" + format_seconds(*unit.delay_s));
    if (unit.repeat) tuples.insert(el + "|repeat|" + std::to_string(*unit.repeat));
  }
  return {tuples.begin(), tuples.end()};
}

SpiceBreakdown spice_lite(const std::vector<ActionUnit>& candidate,
                          const std::vector<ActionUnit>& reference) {
  std::vector<std::string> cand = spice_tuples(candidate);
  std::vector<std::string> ref = spice_tuples(reference);
  std::set<std::string> ref_set(ref.begin(), ref.end());

  SpiceBreakdown out;
  for (const auto& tuple : cand) {
    if (ref_set.count(tuple)) ++out.true_positive;
    else ++out.false_positive;
  }
  out.false_negative = ref.size() - out.true_positive;

  const std::size_t cand_total = out.true_positive + out.false_positive;
  const std::size_t ref_total = out.true_positive + out.false_negative;
  out.precision = cand_total == 0 ? 0.0 : static_cast<double>(out.true_positive) / cand_total;
  out.recall = ref_total == 0 ? 0.0 : static_cast<double>(out.true_positive) / ref_total;
  out.f1 = (out.precision + out.recall) <= 0.0
               ? 0.0
               : 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

namespace {

std::string match_key(const ActionUnit& unit) {
  return unit.element + "\x1f" + to_string(unit.category);
}

// Per-pair detail: compare effect family, direction, duration, delay and
// repeat, skipping parameters absent on either side. All compared match -> 1,
// some -> 0.5, none -> 0. Nothing comparable counts as a full match.
double pair_detail(const ActionUnit& ref, const ActionUnit& pred) {
  int compared = 0;
  int matched = 0;
  auto consider = [&compared, &matched](bool both_present, bool equal) {
    if (!both_present) return;
    ++compared;
    if (equal) ++matched;
  };
  consider(!ref.effect.empty() && !pred.effect.empty(), ref.effect == pred.effect);
  consider(ref.direction.has_value() && pred.direction.has_value(),
           ref.direction == pred.direction);
  consider(ref.duration_s.has_value() && pred.duration_s.has_value(),
           std::fabs(*ref.duration_s - *pred.duration_s) <= 0.05);
  consider(ref.delay_s.has_value() && pred.delay_s.has_value(),
           std::fabs(*ref.delay_s - *pred.delay_s) <= 0.05);
  consider(ref.repeat.has_value() && pred.repeat.has_value(), ref.repeat == pred.repeat);
  if (compared == 0) return 1.0;
  if (matched == compared) return 1.0;
  if (matched > 0) return 0.5;
  return 0.0;
}

std::size_t longest_increasing_subsequence(const std::vector<std::size_t>& values) {
  std::vector<std::size_t> tails;
  for (std::size_t v : values) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) tails.push_back(v);
    else *it = v;
  }
  return tails.size();
}

}  // namespace

std::vector<CodaPair> coda_match(const std::vector<ActionUnit>& prediction,
                                 const std::vector<ActionUnit>& reference) {
  std::vector<CodaPair> matches;
  std::vector<bool> used(prediction.size(), false);
  for (std::size_t ri = 0; ri < reference.size(); ++ri) {
    const std::string key = match_key(reference[ri]);
    for (std::size_t pi = 0; pi < prediction.size(); ++pi) {
      if (used[pi] || match_key(prediction[pi]) != key) continue;
      used[pi] = true;
      matches.push_back(CodaPair{ri, pi, pair_detail(reference[ri], prediction[pi])});
      break;
    }
  }
  return matches;
}

CodaBreakdown coda_score(const std::vector<ActionUnit>& prediction,
                         const std::vector<ActionUnit>& reference) {
  CodaBreakdown out;
  out.matches = coda_match(prediction, reference);
  const std::size_t n = reference.size();

  if (n == 0) {
    // Empty reference: vacuously covered and ordered.
    out.coverage = 1.0;
    out.order = 1.0;
    out.detail = 0.0;
    return out;
  }

  out.coverage = static_cast<double>(out.matches.size()) / static_cast<double>(n);

  // Matches are already in reference order; LCS of the matched orderings is
  // the LIS of the prediction indices.
  std::vector<std::size_t> pred_indices;
  pred_indices.reserve(out.matches.size());
  for (const auto& m : out.matches) pred_indices.push_back(m.prediction_index);
  out.lcs_len = longest_increasing_subsequence(pred_indices);
  out.order = static_cast<double>(out.lcs_len) / static_cast<double>(n);

  if (out.matches.empty()) {
    out.detail = 0.0;
  } else {
    double sum = 0.0;
    for (const auto& m : out.matches) sum += m.detail;
    out.detail = sum / static_cast<double>(out.matches.size());
  }
  return out;
}

PairReport evaluate_pair(const std::string& prediction, const std::string& reference) {
  PairReport report;
  const std::vector<std::string> pred_tokens = tokenize(prediction);
  const std::vector<std::string> ref_tokens = tokenize(reference);
  report.bleu4 = bleu4(pred_tokens, ref_tokens).score;
  report.rouge1 = rouge(pred_tokens, ref_tokens, RougeVariant::N1).score;
  report.rouge2 = rouge(pred_tokens, ref_tokens, RougeVariant::N2).score;
  report.rougeL = rouge(pred_tokens, ref_tokens, RougeVariant::L).score;

  const std::vector<ActionUnit> pred_units = extract_action_units(prediction);
  const std::vector<ActionUnit> ref_units = extract_action_units(reference);
  report.spice = spice_lite(pred_units, ref_units).f1;
  CodaBreakdown coda = coda_score(pred_units, ref_units);
  report.coda_coverage = coda.coverage;
  report.coda_order = coda.order;
  report.coda_detail = coda.detail;
  return report;
}

MetricReport evaluate_corpus(const std::vector<std::pair<std::string, std::string>>& pairs,
                             const MetricConfig& config) {
  if (pairs.empty()) {
    throw std::invalid_argument("evaluate_corpus requires at least one pair");
  }
  MetricReport report;
  report.config = config;
  report.pairs.reserve(pairs.size());

  PairReport sums;
  for (const auto& [prediction, reference] : pairs) {
    try {
      PairReport pair = evaluate_pair(prediction, reference);
      sums.bleu4 += pair.bleu4;
      sums.rouge1 += pair.rouge1;
      sums.rouge2 += pair.rouge2;
      sums.rougeL += pair.rougeL;
      sums.spice += pair.spice;
      sums.coda_coverage += pair.coda_coverage;
      sums.coda_order += pair.coda_order;
      sums.coda_detail += pair.coda_detail;
      report.pairs.push_back(pair);
      ++report.evaluated;
    } catch (const std::exception&) {
      ++report.failed;  // excluded from the means
    }
  }
  if (report.evaluated > 0) {
    const double n = static_cast<double>(report.evaluated);
    report.means.bleu4 = sums.bleu4 / n;
    report.means.rouge1 = sums.rouge1 / n;
    report.means.rouge2 = sums.rouge2 / n;
    report.means.rougeL = sums.rougeL / n;
    report.means.spice = sums.spice / n;
    report.means.coda_coverage = sums.coda_coverage / n;
    report.means.coda_order = sums.coda_order / n;
    report.means.coda_detail = sums.coda_detail / n;
  }
  return report;
}

namespace {

std::string metric_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void append_row(std::string& out, const PairReport& p) {
  out += metric_number(p.bleu4) + "," + metric_number(p.rouge1) + "," + metric_number(p.rouge2) +
         "," + metric_number(p.rougeL) + "," + metric_number(p.spice) + "," +
         metric_number(p.coda_coverage) + "," + metric_number(p.coda_order) + "," +
         metric_number(p.coda_detail) + "\n";
}

}  // namespace

std::string MetricReport::to_csv() const {
  std::string out =
      "pair,bleu4,rouge1,rouge2,rougeL,spice,coda_coverage,coda_order,coda_detail\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += std::to_string(i) + ",";
    append_row(out, pairs[i]);
  }
  return out;
}

std::string MetricReport::to_summary() const {
  std::ostringstream out;
  out << "pairs evaluated: " << evaluated << "\n";
  out << "pairs failed: " << failed << "\n";
  out << "tokenizer: " << config.tokenizer << "\n";
  out << "coda repetitions: " << config.coda_repetitions << "\n";
  out << "mean bleu4: " << metric_number(means.bleu4) << "\n";
  out << "mean rouge1: " << metric_number(means.rouge1) << "\n";
  out << "mean rouge2: " << metric_number(means.rouge2) << "\n";
  out << "mean rougeL: " << metric_number(means.rougeL) << "\n";
  out << "mean spice: " << metric_number(means.spice) << "\n";
  out << "mean coda_coverage: " << metric_number(means.coda_coverage) << "\n";
  out << "mean coda_order: " << metric_number(means.coda_order) << "\n";
  out << "mean coda_detail: " << metric_number(means.coda_detail) << "\n";
  return out.str();
}

}  // namespace slideanim
