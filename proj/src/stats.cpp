#include "slideanim/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "slideanim/catalog.hpp"
#include "slideanim/grammar.hpp"
#include "slideanim/json_io.hpp"

namespace slideanim {

namespace fs = std::filesystem;

double DatasetStats::mean_steps() const {
  if (total_schemes == 0) return 0.0;
  return static_cast<double>(total_instances) / static_cast<double>(total_schemes);
}

double DatasetStats::image_share_percent() const {
  const std::size_t total = text_instances + image_instances;
  if (total == 0) return 0.0;
  return 100.0 * static_cast<double>(image_instances) / static_cast<double>(total);
}

DatasetStats dataset_stats(const DatasetManifest& manifest, const std::string& root) {
  DatasetStats stats;
  std::map<std::string, SlideSpec> slides;  // per slide_id, loaded once

  for (const auto& record : manifest.records) {
    if (record.status != "complete") {
      ++stats.excluded_records;
      continue;
    }
    try {
      auto slide_it = slides.find(record.slide_id);
      if (slide_it == slides.end()) {
        SlideSpec slide = load_slide((fs::path(root) / record.slide_path).string());
        slide_it = slides.emplace(record.slide_id, std::move(slide)).first;
      }
      const SlideSpec& slide = slide_it->second;
      AnimationPlan plan = load_plan((fs::path(root) / record.plan_path).string());

      ++stats.total_schemes;
      stats.step_count_histogram[static_cast<int>(plan.steps.size())]++;
      for (const auto& step : plan.steps) {
        ++stats.total_instances;
        const int cat = static_cast<int>(step.category);
        stats.category_counts[static_cast<std::size_t>(cat)]++;
        const Element* el = slide.find_element(step.element);
        const bool image = el != nullptr && el->kind == ElementKind::Image;
        if (image) ++stats.image_instances;
        else ++stats.text_instances;
        stats.effect_counts[cat][image ? 1 : 0][variant_name(step.effect, step.direction)]++;
        stats.duration_histogram[step.duration_s]++;
        stats.delay_histogram[step.delay_s]++;
      }
    } catch (const std::exception&) {
      ++stats.excluded_records;
    }
  }
  return stats;
}

DatasetStats dataset_stats_from_file(const std::string& manifest_path) {
  DatasetManifest manifest = load_manifest(manifest_path);
  return dataset_stats(manifest, fs::path(manifest_path).parent_path().string());
}

namespace {

std::string percent_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct EffectRow {
  std::string category;
  std::string kind;
  std::string effect;
  std::size_t count;
  double percent;
};

std::vector<EffectRow> effect_rows(const DatasetStats& stats) {
  std::vector<EffectRow> rows;
  for (int c = 0; c < 3; ++c) {
    for (int kind = 0; kind < 2; ++kind) {
      std::size_t cell_total = 0;
      for (const auto& [name, count] : stats.effect_counts[c][kind]) cell_total += count;
      if (cell_total == 0) continue;
      for (const auto& [name, count] : stats.effect_counts[c][kind]) {
        rows.push_back(EffectRow{to_string(static_cast<Category>(c)),
                                 kind == 1 ? "image" : "text", name, count,
                                 100.0 * static_cast<double>(count) /
                                     static_cast<double>(cell_total)});
      }
    }
  }
  return rows;
}

std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::pair<std::string, std::size_t>>& bars) {
  std::size_t max_count = 1;
  for (const auto& [label, count] : bars) max_count = std::max(max_count, count);
  const int bar_height = 18;
  const int gap = 6;
  const int label_width = 220;
  const int chart_width = 420;
  const int height = 40 + static_cast<int>(bars.size()) * (bar_height + gap);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << label_width + chart_width + 80
      << "\" height=\"" << height << "\">\n";
  svg << "  <text x=\"8\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" << title
      << "</text>\n";
  int y = 36;
  for (const auto& [label, count] : bars) {
    const int w = static_cast<int>(static_cast<double>(count) / static_cast<double>(max_count) *
                                   chart_width);
    svg << "  <text x=\"8\" y=\"" << y + 13
        << "\" font-family=\"monospace\" font-size=\"11\">" << label << "</text>\n";
    svg << "  <rect x=\"" << label_width << "\" y=\"" << y << "\" width=\"" << std::max(w, 1)
        << "\" height=\"" << bar_height << "\" fill=\"#4a74b4\"/>\n";
    svg << "  <text x=\"" << label_width + std::max(w, 1) + 6 << "\" y=\"" << y + 13
        << "\" font-family=\"monospace\" font-size=\"11\">" << count << "</text>\n";
    y += bar_height + gap;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string stats_summary(const DatasetStats& stats) {
  std::ostringstream out;
  out << "schemes:            " << stats.total_schemes << "\n";
  out << "animation instances: " << stats.total_instances << "\n";
  out << "excluded records:   " << stats.excluded_records << "\n";
  out << "mean steps/scheme:  " << percent_str(stats.mean_steps()) << "\n";
  out << "entrance instances: " << stats.category_counts[0] << "\n";
  out << "emphasis instances: " << stats.category_counts[1] << "\n";
  out << "exit instances:     " << stats.category_counts[2] << "\n";
  out << "image-based share:  " << percent_str(stats.image_share_percent()) << "%\n";
  out << "text-based share:   " << percent_str(100.0 - stats.image_share_percent()) << "%\n";

  out << "\nstep-count histogram:\n";
  for (const auto& [steps, count] : stats.step_count_histogram) {
    out << "  " << steps << ": " << count << "\n";
  }
  out << "\ntop effects per category (all kinds):\n";
  for (int c = 0; c < 3; ++c) {
    std::map<std::string, std::size_t> combined;
    for (int kind = 0; kind < 2; ++kind) {
      for (const auto& [name, count] : stats.effect_counts[c][kind]) combined[name] += count;
    }
    std::vector<std::pair<std::string, std::size_t>> sorted(combined.begin(), combined.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    out << "  " << to_string(static_cast<Category>(c)) << ":";
    for (std::size_t i = 0; i < sorted.size() && i < 3; ++i) {
      out << " " << sorted[i].first << "(" << sorted[i].second << ")";
    }
    out << "\n";
  }
  return out.str();
}

void emit_reports(const DatasetStats& stats, const std::string& out_dir, bool with_svg) {
  if (stats.total_schemes == 0 || stats.total_instances == 0) {
    throw std::invalid_argument("refusing to emit reports for an empty dataset");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create report directory '" + out_dir +
                             "': " + ec.message());
  }
  auto path = [&out_dir](const char* name) { return (fs::path(out_dir) / name).string(); };

  {
    std::string csv = "category,element_kind,effect,count,percent\n";
    for (const auto& row : effect_rows(stats)) {
      csv += row.category + "," + row.kind + "," + row.effect + "," +
             std::to_string(row.count) + "," + percent_str(row.percent) + "\n";
    }
    write_text_file(path("effect_frequencies.csv"), csv);
  }
  {
    std::string csv = "steps,count\n";
    for (const auto& [steps, count] : stats.step_count_histogram) {
      csv += std::to_string(steps) + "," + std::to_string(count) + "\n";
    }
    write_text_file(path("step_count_histogram.csv"), csv);
  }
  {
    std::string csv = "duration_s,count\n";
    for (const auto& [duration, count] : stats.duration_histogram) {
      csv += format_seconds(duration) + "," + std::to_string(count) + "\n";
    }
    write_text_file(path("duration_histogram.csv"), csv);
  }
  {
    std::string csv = "delay_s,count\n";
    for (const auto& [delay, count] : stats.delay_histogram) {
      csv += format_seconds(delay) + "," + std::to_string(count) + "\n";
    }
    write_text_file(path("delay_histogram.csv"), csv);
  }
  write_text_file(path("summary.txt"), stats_summary(stats));

  if (!with_svg) return;

  {
    std::vector<std::pair<std::string, std::size_t>> bars;
    for (const auto& [steps, count] : stats.step_count_histogram) {
      bars.emplace_back(std::to_string(steps) + " steps", count);
    }
    write_text_file(path("step_count_histogram.svg"),
                    bar_chart_svg("Steps per scheme", bars));
  }
  {
    std::vector<std::pair<std::string, std::size_t>> bars;
    for (const auto& [duration, count] : stats.duration_histogram) {
      bars.emplace_back(format_seconds(duration) + " s", count);
    }
    write_text_file(path("duration_histogram.svg"), bar_chart_svg("Effect durations", bars));
  }
  {
    std::vector<std::pair<std::string, std::size_t>> bars;
    for (const auto& [delay, count] : stats.delay_histogram) {
      bars.emplace_back(format_seconds(delay) + " s", count);
    }
    write_text_file(path("delay_histogram.svg"), bar_chart_svg("Effect delays", bars));
  }
  {
    std::vector<EffectRow> rows = effect_rows(stats);
    std::sort(rows.begin(), rows.end(), [](const EffectRow& a, const EffectRow& b) {
      return a.count != b.count ? a.count > b.count : a.effect < b.effect;
    });
    std::vector<std::pair<std::string, std::size_t>> bars;
    for (std::size_t i = 0; i < rows.size() && i < 12; ++i) {
      bars.emplace_back(rows[i].category + "/" + rows[i].kind + "/" + rows[i].effect,
                        rows[i].count);
    }
    write_text_file(path("effect_frequencies.svg"),
                    bar_chart_svg("Most frequent effects", bars));
  }
}

}  // namespace slideanim
