#include "slideanim.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "slideanim/catalog.hpp"
#include "slideanim/grammar.hpp"
#include "slideanim/json_io.hpp"
#include "slideanim/metrics.hpp"
#include "slideanim/render.hpp"
#include "slideanim/stats.hpp"
#include "slideanim/synth.hpp"
#include "slideanim/validate.hpp"

// Opaque handle layouts; the header only forward-declares them.
struct sa_slide {
  slideanim::SlideSpec spec;
};
struct sa_plan {
  slideanim::AnimationPlan plan;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ failures onto status codes; parse-ish errors are the common case.
template <typename Fn>
sa_status guarded(sa_status failure_code, Fn&& fn) {
  try {
    fn();
    return SA_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SA_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return failure_code;
  } catch (...) {
    set_error("unknown error");
    return SA_ERROR_INTERNAL;
  }
}

template <typename Fn>
char* guarded_string(Fn&& fn) {
  try {
    return dup_string(fn());
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  } catch (...) {
    set_error("unknown error");
    return nullptr;
  }
}

}  // namespace

extern "C" {

const char* sa_version(void) { return "1.0.0"; }

const char* sa_last_error(void) { return g_last_error.c_str(); }

void sa_string_free(char* s) { delete[] s; }

sa_status sa_slide_from_json(const char* json_text, sa_slide** out) {
  if (json_text == nullptr || out == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_PARSE, [&] {
    auto handle = std::make_unique<sa_slide>();
    handle->spec = slideanim::slide_from_json(json_text);
    *out = handle.release();
  });
}

sa_status sa_slide_load(const char* path, sa_slide** out) {
  if (path == nullptr || out == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_IO, [&] {
    auto handle = std::make_unique<sa_slide>();
    handle->spec = slideanim::load_slide(path);
    *out = handle.release();
  });
}

char* sa_slide_to_json(const sa_slide* slide) {
  if (slide == nullptr) {
    set_error("null slide handle");
    return nullptr;
  }
  return guarded_string([&] { return slideanim::slide_to_json(slide->spec); });
}

void sa_slide_free(sa_slide* slide) { delete slide; }

sa_status sa_plan_from_json(const char* json_text, sa_plan** out) {
  if (json_text == nullptr || out == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_PARSE, [&] {
    auto handle = std::make_unique<sa_plan>();
    handle->plan = slideanim::plan_from_json(json_text);
    *out = handle.release();
  });
}

sa_status sa_plan_load(const char* path, sa_plan** out) {
  if (path == nullptr || out == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_IO, [&] {
    auto handle = std::make_unique<sa_plan>();
    handle->plan = slideanim::load_plan(path);
    *out = handle.release();
  });
}

char* sa_plan_to_json(const sa_plan* plan) {
  if (plan == nullptr) {
    set_error("null plan handle");
    return nullptr;
  }
  return guarded_string([&] { return slideanim::plan_to_json(plan->plan); });
}

void sa_plan_free(sa_plan* plan) { delete plan; }

double sa_plan_duration(const sa_plan* plan) {
  if (plan == nullptr) return 0.0;
  return slideanim::plan_duration(plan->plan);
}

sa_status sa_validate_plan(const sa_plan* plan, const sa_slide* slide, char** report_json) {
  if (plan == nullptr || slide == nullptr) {
    set_error("null handle");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_INTERNAL, [&] {
    slideanim::ValidationReport report = slideanim::validate_plan(plan->plan, slide->spec);
    if (report_json != nullptr) *report_json = dup_string(slideanim::report_to_json(report));
  });
}

char* sa_plan_action_list(const sa_plan* plan) {
  if (plan == nullptr) {
    set_error("null plan handle");
    return nullptr;
  }
  return guarded_string([&] { return slideanim::format_action_list(plan->plan); });
}

char* sa_plan_narrative(const sa_plan* plan) {
  if (plan == nullptr) {
    set_error("null plan handle");
    return nullptr;
  }
  return guarded_string([&] { return slideanim::render_narrative(plan->plan); });
}

char* sa_extract_action_units(const char* text) {
  if (text == nullptr) {
    set_error("null text");
    return nullptr;
  }
  return guarded_string(
      [&] { return slideanim::units_to_json(slideanim::extract_action_units(text)); });
}

char* sa_effect_catalog_json(void) {
  return guarded_string([] {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& kind : slideanim::effect_catalog()) {
      nlohmann::ordered_json entry;
      entry["family"] = kind.family;
      nlohmann::ordered_json categories = nlohmann::ordered_json::array();
      if (kind.supports(slideanim::Category::Entrance)) categories.push_back("entrance");
      if (kind.supports(slideanim::Category::Emphasis)) categories.push_back("emphasis");
      if (kind.supports(slideanim::Category::Exit)) categories.push_back("exit");
      entry["categories"] = std::move(categories);
      entry["directional"] = kind.directional;
      if (!kind.paired_family.empty()) entry["paired_family"] = kind.paired_family;
      doc.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
  });
}

sa_status sa_render_video(const sa_slide* slide, const sa_plan* plan, double fps,
                          const char* out_dir, uint32_t flags, int jobs) {
  if (slide == nullptr || plan == nullptr || out_dir == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_IO, [&] {
    slideanim::RenderOptions options;
    options.placeholder_text = (flags & SA_RENDER_PLACEHOLDER_TEXT) != 0;
    options.placeholder_images = (flags & SA_RENDER_PLACEHOLDER_IMAGES) != 0;
    options.jobs = jobs;
    slideanim::render_video(slide->spec, plan->plan, fps, out_dir, options);
  });
}

char* sa_config_preset(const char* name) {
  if (name == nullptr) {
    set_error("null preset name");
    return nullptr;
  }
  return guarded_string([&] { return slideanim::config_to_json(slideanim::config_preset(name)); });
}

sa_status sa_synth_dataset(const char* config_json, const char* out_root,
                           char** manifest_path_out) {
  if (config_json == nullptr || out_root == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_IO, [&] {
    slideanim::SynthConfig config = slideanim::config_from_json(config_json);
    slideanim::synth_dataset(config, out_root);
    if (manifest_path_out != nullptr) {
      *manifest_path_out =
          dup_string((std::filesystem::path(out_root) / "manifest.json").string());
    }
  });
}

char* sa_synth_slide_json(uint64_t seed, const char* config_json) {
  return guarded_string([&] {
    slideanim::SynthConfig config = config_json != nullptr
                                        ? slideanim::config_from_json(config_json)
                                        : slideanim::default_config();
    return slideanim::slide_to_json(slideanim::synth_slide(seed, config));
  });
}

char* sa_synth_scheme_json(uint64_t seed, const char* slide_json, const char* config_json) {
  if (slide_json == nullptr) {
    set_error("null slide document");
    return nullptr;
  }
  return guarded_string([&] {
    slideanim::SynthConfig config = config_json != nullptr
                                        ? slideanim::config_from_json(config_json)
                                        : slideanim::default_config();
    slideanim::SlideSpec slide = slideanim::slide_from_json(slide_json);
    return slideanim::plan_to_json(slideanim::synth_scheme(seed, slide, config));
  });
}

char* sa_evaluate_pair(const char* prediction, const char* reference) {
  if (prediction == nullptr || reference == nullptr) {
    set_error("null text");
    return nullptr;
  }
  return guarded_string([&] {
    slideanim::PairReport report = slideanim::evaluate_pair(prediction, reference);
    nlohmann::ordered_json doc;
    doc["bleu4"] = report.bleu4;
    doc["rouge1"] = report.rouge1;
    doc["rouge2"] = report.rouge2;
    doc["rougeL"] = report.rougeL;
    doc["spice"] = report.spice;
    doc["coda_coverage"] = report.coda_coverage;
    doc["coda_order"] = report.coda_order;
    doc["coda_detail"] = report.coda_detail;
    return doc.dump(2) + "\n";
  });
}

sa_status sa_evaluate_corpus_files(const char* predictions_path, const char* references_path,
                                   const char* out_dir, char** summary_out) {
  if (predictions_path == nullptr || references_path == nullptr || out_dir == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_IO, [&] {
    auto read_lines = [](const std::string& path) {
      std::string text = slideanim::read_text_file(path);
      std::vector<std::string> lines;
      std::size_t pos = 0;
      while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::size_t end = eol == std::string::npos ? text.size() : eol;
        if (end > pos && text[end - 1] == '\r') --end;  // CRLF input
        if (eol == std::string::npos) {
          if (pos < text.size()) lines.push_back(text.substr(pos, end - pos));
          break;
        }
        lines.push_back(text.substr(pos, end - pos));
        pos = eol + 1;
      }
      return lines;
    };
    std::vector<std::string> predictions = read_lines(predictions_path);
    std::vector<std::string> references = read_lines(references_path);
    if (predictions.size() != references.size()) {
      throw std::invalid_argument(
          "prediction and reference files must be line-aligned (" +
          std::to_string(predictions.size()) + " vs " + std::to_string(references.size()) +
          " lines)");
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      pairs.emplace_back(predictions[i], references[i]);
    }
    slideanim::MetricReport report = slideanim::evaluate_corpus(pairs);
    std::filesystem::create_directories(out_dir);
    slideanim::write_text_file((std::filesystem::path(out_dir) / "pairs.csv").string(),
                               report.to_csv());
    slideanim::write_text_file((std::filesystem::path(out_dir) / "summary.txt").string(),
                               report.to_summary());
    if (summary_out != nullptr) *summary_out = dup_string(report.to_summary());
  });
}

sa_status sa_dataset_stats(const char* manifest_path, const char* out_dir, uint32_t flags,
                           char** summary_out) {
  if (manifest_path == nullptr || out_dir == nullptr) {
    set_error("null argument");
    return SA_ERROR_INVALID_ARGUMENT;
  }
  return guarded(SA_ERROR_IO, [&] {
    slideanim::DatasetStats stats = slideanim::dataset_stats_from_file(manifest_path);
    slideanim::emit_reports(stats, out_dir, (flags & SA_STATS_SVG) != 0);
    if (summary_out != nullptr) *summary_out = dup_string(slideanim::stats_summary(stats));
  });
}

}  // extern "C"
