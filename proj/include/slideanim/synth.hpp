#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slideanim/types.hpp"

namespace slideanim {

struct WeightedGrid {
  std::vector<double> choices;
  std::vector<double> weights;  // same length, non-negative, positive mass
};

// Raw per-cell effect preferences in percent. Keys are variant names
// ("Box", "FlyFromTop") or a directional family name ("Wipe"), which splits
// its mass evenly over the four directions. Probability mass not named is
// spread uniformly over the remaining catalog variants of that cell.
using EffectPercentTable = std::map<std::string, double>;

struct SynthConfig {
  std::string dataset_id;  // empty: derived from the seed
  std::uint64_t seed = 42;
  int n_slides = 300;
  int schemes_per_slide = 40;
  double language_zh_fraction = 0.5;
  std::vector<double> fps_list = {2.0};
  bool render = true;
  bool resume = true;  // skip triplets already complete under out_root
  bool placeholder_text = false;
  bool placeholder_images = true;
  int jobs = 0;

  int step_min = 4;
  int step_max = 15;
  double step_mean = 7.6;

  WeightedGrid durations;
  WeightedGrid delays;
  std::vector<double> repeat_weights = {0.80, 0.15, 0.05};  // repeat = 1, 2, 3

  double body_probability = 0.8;
  double emphasis_weight = 0.60;
  double exit_weight = 0.30;
  double reenter_weight = 0.10;

  // [category][kind] with kind 0 = text (title/body), 1 = image.
  EffectPercentTable effect_percent[3][2];

  std::string external_endpoint;  // empty: external text generator disabled
  double external_timeout_s = 10.0;
};

// The bundled defaults encode the published preference tables; this is the
// `paper_default` preset.
SynthConfig default_config();
SynthConfig config_preset(const std::string& name);  // throws on unknown name

std::string config_to_json(const SynthConfig& config);
SynthConfig config_from_json(const std::string& json_text);  // defaults filled in

// Normalized per-variant weights for one (category, element-kind) cell.
struct VariantWeight {
  std::string family;
  Direction direction;
  double weight;  // cell weights sum to 1
};
std::vector<VariantWeight> resolve_effect_weights(const SynthConfig& config, Category category,
                                                  bool image_kind);

// Discretized binomial on [step_min, step_max] tuned to step_mean.
std::vector<double> step_count_pmf(const SynthConfig& config);

SlideSpec synth_slide(std::uint64_t seed, const SynthConfig& config,
                      const std::string& slide_id = "");

AnimationPlan synth_scheme(std::uint64_t seed, const SlideSpec& slide, const SynthConfig& config);

struct TripletRecord {
  std::string slide_id;
  int scheme_index = 0;
  std::string language;  // slide language; descriptions are English either way
  std::string slide_path;  // paths relative to the dataset root
  std::string plan_path;
  std::string description_path;
  std::string frames_dir;            // empty in plan-only datasets
  std::string render_manifest_path;  // empty in plan-only datasets
  double fps = 0.0;
  std::string split;       // "train" or "test"
  std::string status;      // "complete" or "failed: <reason>"
  std::string annotation;  // "", "external" or "fallback"
};

struct DatasetManifest {
  std::string dataset_id;
  std::uint64_t seed = 0;
  std::string config_json;
  std::vector<TripletRecord> records;

  std::size_t complete_count() const;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const std::string& json_text);
DatasetManifest load_manifest(const std::string& path);

// Builds the triplet tree under out_root and writes manifest.json last.
// Re-running with the same config and root resumes: records that are
// complete on disk are not regenerated.
DatasetManifest synth_dataset(const SynthConfig& config, const std::string& out_root);

// Deterministic 1-in-12 test split on (slide_id, scheme_index).
std::string split_tag(const std::string& slide_id, int scheme_index);

struct ServiceResult {
  bool used_external = false;  // false: template narrative fallback
  std::string narrative;
  std::string note;  // why the fallback was taken, empty on success
};

// Posts the plan's canonical action list to a plain-text HTTP endpoint and
// accepts the response only when every plan step is recoverable from it.
// Network trouble or bad output falls back to the template narrative.
ServiceResult describe_via_service(const AnimationPlan& plan, const std::string& endpoint,
                                   double timeout_s);

// True when extract_action_units recovers every plan step, in order, with
// matching category, element and effect family.
bool narrative_recovers_plan(const std::string& text, const AnimationPlan& plan);

}  // namespace slideanim
