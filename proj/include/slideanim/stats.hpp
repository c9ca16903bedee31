#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>

#include "slideanim/synth.hpp"

namespace slideanim {

struct DatasetStats {
  std::size_t total_schemes = 0;    // complete plans aggregated
  std::size_t total_instances = 0;  // animation steps across those plans
  std::size_t excluded_records = 0; // failed or unreadable records
  std::array<std::size_t, 3> category_counts = {0, 0, 0};  // entrance/emphasis/exit
  // [category][kind] -> variant name -> count, kind 0 = text, 1 = image.
  std::map<std::string, std::size_t> effect_counts[3][2];
  std::map<int, std::size_t> step_count_histogram;
  std::map<double, std::size_t> duration_histogram;
  std::map<double, std::size_t> delay_histogram;
  std::size_t text_instances = 0;
  std::size_t image_instances = 0;

  double mean_steps() const;
  double image_share_percent() const;
};

// Streams every complete record's plan document; paths resolve against the
// dataset root. Unreadable plans are skipped and counted.
DatasetStats dataset_stats(const DatasetManifest& manifest, const std::string& root);
DatasetStats dataset_stats_from_file(const std::string& manifest_path);

// Writes effect_frequencies.csv, step_count_histogram.csv,
// duration_histogram.csv, delay_histogram.csv and summary.txt; optional
// matching bar-chart SVGs. Throws on empty stats rather than emitting
// empty files.
void emit_reports(const DatasetStats& stats, const std::string& out_dir, bool with_svg = false);

std::string stats_summary(const DatasetStats& stats);

}  // namespace slideanim
