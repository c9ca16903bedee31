#include "slideanim/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "slideanim/catalog.hpp"
#include "slideanim/grammar.hpp"
#include "slideanim/json_io.hpp"
#include "slideanim/render.hpp"
#include "slideanim/rng.hpp"
#include "slideanim/validate.hpp"

namespace slideanim {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic two-level seed derivation: a record's seed depends only on
// (master seed, slide index, stream), never on sibling records.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return Rng(master).fork(a).fork(b).next_u64();
}

// ---- bundled phrase corpus -------------------------------------------------

struct Topic {
  const char* keyword_en;
  const char* display_en;
  const char* display_zh;
};

constexpr std::array<Topic, 10> kTopics = {{
    {"nature", "Nature", "自然"},
    {"city", "City Life", "城市"},
    {"technology", "Technology", "科技"},
    {"food", "Food", "美食"},
    {"ocean", "The Ocean", "海洋"},
    {"mountains", "Mountains", "山脉"},
    {"architecture", "Architecture", "建筑"},
    {"wildlife", "Wildlife", "野生动物"},
    {"sky", "The Sky", "天空"},
    {"travel", "Travel", "旅行"},
}};

constexpr std::array<const char*, 6> kTitleTemplatesEn = {
    "The Art of %s", "Exploring %s", "%s in Focus", "A Journey Through %s", "Understanding %s",
    "The World of %s"};

constexpr std::array<const char*, 5> kTitleTemplatesZh = {"走进%s", "%s之美", "探索%s", "%s掠影",
                                                          "认识%s"};

constexpr std::array<const char*, 8> kBodySentencesEn = {
    "This page highlights key facts about %s.",
    "Recent years have brought rapid change to %s.",
    "The images on this slide show different sides of %s.",
    "Experts keep finding new perspectives on %s.",
    "Few subjects inspire as much curiosity as %s.",
    "There is more to %s than first meets the eye.",
    "A closer look at %s reveals surprising detail.",
    "People around the world share a fascination with %s.",
};

constexpr std::array<const char*, 6> kBodySentencesZh = {
    "本页介绍与%s相关的重要内容。", "近年来%s发生了巨大变化。",
    "图片展示了%s的不同侧面。",     "让我们一起了解%s的故事。",
    "%s蕴含着许多值得探索的细节。", "世界各地的人们都对%s充满好奇。",
};

std::string fill_template(const char* tmpl, const std::string& value) {
  std::string out = tmpl;
  auto pos = out.find("%s");
  if (pos != std::string::npos) out.replace(pos, 2, value);
  return out;
}

// ---- layout ----------------------------------------------------------------

struct Rect {
  int x, y, w, h;
};

long long overlap_area(const Rect& a, const Rect& b) {
  long long dx = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  long long dy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (dx <= 0 || dy <= 0) return 0;
  return dx * dy;
}

bool overlap_ok(const Rect& candidate, const std::vector<Rect>& placed) {
  for (const auto& other : placed) {
    long long inter = overlap_area(candidate, other);
    long long smaller = std::min(static_cast<long long>(candidate.w) * candidate.h,
                                 static_cast<long long>(other.w) * other.h);
    if (inter * 10 > smaller) return false;  // more than 10% of the smaller area
  }
  return true;
}

}  // namespace

SynthConfig default_config() {
  SynthConfig config;
  config.durations.choices = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  config.durations.weights = {0.12, 0.31, 0.31, 0.14, 0.07, 0.05};
  config.delays.choices = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  config.delays.weights = {0.22, 0.22, 0.18, 0.12, 0.09, 0.07, 0.05, 0.03, 0.02};

  auto& entrance_text = config.effect_percent[0][0];
  entrance_text["Box"] = 19.3;
  entrance_text["Blinds"] = 15.2;
  entrance_text["FlyFromTop"] = 15.8;

  auto& entrance_image = config.effect_percent[0][1];
  entrance_image["Pinwheel"] = 17.6;
  entrance_image["FlyFromLeft"] = 11.9;
  entrance_image["FlyFromTop"] = 11.1;

  auto& emphasis_text = config.effect_percent[1][0];
  emphasis_text["Teeter"] = 33.5;
  emphasis_text["FlashBulb"] = 30.3;

  auto& emphasis_image = config.effect_percent[1][1];
  emphasis_image["GrowShrink"] = 30.4;
  emphasis_image["Spin"] = 16.3;

  auto& exit_text = config.effect_percent[2][0];
  exit_text["Wipe"] = 22.4;
  exit_text["Checkerboard"] = 14.1;
  exit_text["Fade"] = 17.1;

  auto& exit_image = config.effect_percent[2][1];
  exit_image["Wipe"] = 22.8;
  exit_image["Checkerboard"] = 21.2;
  exit_image["Fade"] = 17.3;
  exit_image["FlyToBottom"] = 12.5;
  exit_image["FlyToRight"] = 6.5;

  return config;
}

SynthConfig config_preset(const std::string& name) {
  if (name == "paper_default" || name == "default") return default_config();
  throw std::invalid_argument("unknown config preset '" + name + "'");
}

namespace {

const char* category_key(int c) {
  switch (c) {
    case 0: return "entrance";
    case 1: return "emphasis";
    default: return "exit";
  }
}

ordered_json grid_to_json(const WeightedGrid& grid) {
  return ordered_json{{"choices", grid.choices}, {"weights", grid.weights}};
}

WeightedGrid grid_from_json(const ordered_json& j, const WeightedGrid& fallback) {
  if (j.is_null()) return fallback;
  WeightedGrid grid;
  grid.choices = j.at("choices").get<std::vector<double>>();
  grid.weights = j.at("weights").get<std::vector<double>>();
  if (grid.choices.size() != grid.weights.size() || grid.choices.empty()) {
    throw std::invalid_argument("grid choices and weights must be equal-length and non-empty");
  }
  double mass = 0.0;
  for (double w : grid.weights) {
    if (w < 0.0) throw std::invalid_argument("grid weights must be non-negative");
    mass += w;
  }
  if (mass <= 0.0) throw std::invalid_argument("grid weights must have positive mass");
  return grid;
}

}  // namespace

std::string config_to_json(const SynthConfig& config) {
  ordered_json doc;
  doc["dataset_id"] = config.dataset_id;
  doc["seed"] = config.seed;
  doc["n_slides"] = config.n_slides;
  doc["schemes_per_slide"] = config.schemes_per_slide;
  doc["language_zh_fraction"] = config.language_zh_fraction;
  doc["fps_list"] = config.fps_list;
  doc["render"] = config.render;
  doc["resume"] = config.resume;
  doc["placeholder_text"] = config.placeholder_text;
  doc["placeholder_images"] = config.placeholder_images;
  doc["jobs"] = config.jobs;
  doc["step_count"] = ordered_json{
      {"min", config.step_min}, {"max", config.step_max}, {"mean", config.step_mean}};
  doc["durations"] = grid_to_json(config.durations);
  doc["delays"] = grid_to_json(config.delays);
  doc["repeat_weights"] = config.repeat_weights;
  doc["body_probability"] = config.body_probability;
  doc["action_mix"] = ordered_json{{"emphasis", config.emphasis_weight},
                                   {"exit", config.exit_weight},
                                   {"reenter", config.reenter_weight}};
  ordered_json effects;
  for (int c = 0; c < 3; ++c) {
    ordered_json cell;
    cell["text"] = config.effect_percent[c][0];
    cell["image"] = config.effect_percent[c][1];
    effects[category_key(c)] = std::move(cell);
  }
  doc["effect_weights"] = std::move(effects);
  doc["external_endpoint"] = config.external_endpoint;
  doc["external_timeout_s"] = config.external_timeout_s;
  return doc.dump(2) + "\n";
}

SynthConfig config_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
  }
  SynthConfig config = default_config();
  try {
    config.dataset_id = doc.value("dataset_id", config.dataset_id);
    config.seed = doc.value("seed", config.seed);
    config.n_slides = doc.value("n_slides", config.n_slides);
    config.schemes_per_slide = doc.value("schemes_per_slide", config.schemes_per_slide);
    config.language_zh_fraction =
        doc.value("language_zh_fraction", config.language_zh_fraction);
    config.fps_list = doc.value("fps_list", config.fps_list);
    config.render = doc.value("render", config.render);
    config.resume = doc.value("resume", config.resume);
    config.placeholder_text = doc.value("placeholder_text", config.placeholder_text);
    config.placeholder_images = doc.value("placeholder_images", config.placeholder_images);
    config.jobs = doc.value("jobs", config.jobs);
    if (doc.contains("step_count")) {
      const auto& sc = doc.at("step_count");
      config.step_min = sc.value("min", config.step_min);
      config.step_max = sc.value("max", config.step_max);
      config.step_mean = sc.value("mean", config.step_mean);
    }
    config.durations = grid_from_json(doc.value("durations", ordered_json()), config.durations);
    config.delays = grid_from_json(doc.value("delays", ordered_json()), config.delays);
    config.repeat_weights = doc.value("repeat_weights", config.repeat_weights);
    config.body_probability = doc.value("body_probability", config.body_probability);
    if (doc.contains("action_mix")) {
      const auto& mix = doc.at("action_mix");
      config.emphasis_weight = mix.value("emphasis", config.emphasis_weight);
      config.exit_weight = mix.value("exit", config.exit_weight);
      config.reenter_weight = mix.value("reenter", config.reenter_weight);
    }
    if (doc.contains("effect_weights")) {
      const auto& effects = doc.at("effect_weights");
      for (int c = 0; c < 3; ++c) {
        if (!effects.contains(category_key(c))) continue;
        const auto& cell = effects.at(category_key(c));
        if (cell.contains("text")) {
          config.effect_percent[c][0] = cell.at("text").get<EffectPercentTable>();
        }
        if (cell.contains("image")) {
          config.effect_percent[c][1] = cell.at("image").get<EffectPercentTable>();
        }
      }
    }
    config.external_endpoint = doc.value("external_endpoint", config.external_endpoint);
    config.external_timeout_s = doc.value("external_timeout_s", config.external_timeout_s);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed config: ") + e.what());
  }

  // Fail early on bad tables rather than mid-dataset.
  step_count_pmf(config);
  for (int c = 0; c < 3; ++c) {
    resolve_effect_weights(config, static_cast<Category>(c), false);
    resolve_effect_weights(config, static_cast<Category>(c), true);
  }
  return config;
}

std::vector<VariantWeight> resolve_effect_weights(const SynthConfig& config, Category category,
                                                  bool image_kind) {
  const EffectPercentTable& table =
      config.effect_percent[static_cast<int>(category)][image_kind ? 1 : 0];
  const std::vector<std::string> variants = category_variants(category);

  std::map<std::string, double> percent;
  double named_total = 0.0;
  std::set<std::string> named;

  for (const auto& [key, value] : table) {
    if (value < 0.0) throw std::invalid_argument("negative effect weight for '" + key + "'");
    std::string family;
    Direction dir = Direction::None;
    if (parse_variant(key, family, dir)) {
      const std::string name = variant_name(family, dir);
      if (std::find(variants.begin(), variants.end(), name) == variants.end()) {
        throw std::invalid_argument("effect '" + key + "' does not support " +
                                    std::string(to_string(category)));
      }
      percent[name] += value;
      named.insert(name);
      named_total += value;
      continue;
    }
    const EffectKind* kind = find_effect(key);
    if (kind != nullptr && kind->directional) {
      // Family-level mass splits evenly over the four directions.
      for (Direction d : {Direction::Left, Direction::Right, Direction::Top, Direction::Bottom}) {
        const std::string name = variant_name(key, d);
        if (std::find(variants.begin(), variants.end(), name) == variants.end()) {
          throw std::invalid_argument("effect '" + key + "' does not support " +
                                      std::string(to_string(category)));
        }
        percent[name] += value / 4.0;
        named.insert(name);
      }
      named_total += value;
      continue;
    }
    throw std::invalid_argument("unknown effect '" + key + "' in weight table");
  }

  const double remainder = std::max(0.0, 100.0 - named_total);
  std::size_t unnamed = 0;
  for (const auto& v : variants) {
    if (!named.count(v)) ++unnamed;
  }
  for (const auto& v : variants) {
    if (!named.count(v)) percent[v] = unnamed > 0 ? remainder / static_cast<double>(unnamed) : 0.0;
  }

  double total = 0.0;
  for (const auto& [name, value] : percent) total += value;
  if (total <= 0.0) throw std::invalid_argument("effect weight table has no mass");

  std::vector<VariantWeight> out;
  out.reserve(variants.size());
  for (const auto& v : variants) {  // catalog order, normalized
    std::string family;
    Direction dir = Direction::None;
    parse_variant(v, family, dir);
    out.push_back(VariantWeight{family, dir, percent[v] / total});
  }
  return out;
}

std::vector<double> step_count_pmf(const SynthConfig& config) {
  if (config.step_min < 4 || config.step_max > 15 || config.step_min > config.step_max) {
    throw std::invalid_argument("step-count support must lie within [4, 15]");
  }
  const int n = config.step_max - config.step_min;
  if (n == 0) return {1.0};
  const double q = std::clamp((config.step_mean - config.step_min) / n, 0.0, 1.0);
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double coeff = 1.0;
    for (int i = 0; i < k; ++i) coeff = coeff * (n - i) / (i + 1);
    pmf[static_cast<std::size_t>(k)] =
        coeff * std::pow(q, k) * std::pow(1.0 - q, n - k);
  }
  return pmf;
}

SlideSpec synth_slide(std::uint64_t seed, const SynthConfig& config,
                      const std::string& slide_id) {
  Rng rng(seed);
  SlideSpec slide;
  slide.slide_id = slide_id.empty() ? "slide_" + std::to_string(seed) : slide_id;
  slide.canvas_w = 1280;
  slide.canvas_h = 720;
  slide.language = rng.next_double() < config.language_zh_fraction ? "zh" : "en";
  const bool zh = slide.language == "zh";

  const Topic& topic = kTopics[rng.next_below(kTopics.size())];
  const std::string display = zh ? topic.display_zh : topic.display_en;

  const int n_images = rng.next_int(1, 4);
  const bool with_body = rng.next_double() < config.body_probability;

  std::vector<Rect> placed;

  Rect title{64, 36 + rng.next_int(0, 24), slide.canvas_w - 128, 96 + rng.next_int(0, 32)};
  placed.push_back(title);
  {
    Element el;
    el.name = "Title";
    el.kind = ElementKind::Title;
    el.x = title.x;
    el.y = title.y;
    el.w = title.w;
    el.h = title.h;
    el.content = zh ? fill_template(kTitleTemplatesZh[rng.next_below(kTitleTemplatesZh.size())],
                                    display)
                    : fill_template(kTitleTemplatesEn[rng.next_below(kTitleTemplatesEn.size())],
                                    display);
    slide.elements.push_back(std::move(el));
  }
  const int content_top = title.y + title.h + 16;

  if (with_body) {
    Rect body{64, content_top + 8 + rng.next_int(0, 16), 460 + rng.next_int(0, 180),
              260 + rng.next_int(0, 120)};
    body.h = std::min(body.h, slide.canvas_h - body.y - 40);
    placed.push_back(body);
    Element el;
    el.name = "Body";
    el.kind = ElementKind::Body;
    el.x = body.x;
    el.y = body.y;
    el.w = body.w;
    el.h = body.h;
    if (zh) {
      std::size_t first = rng.next_below(kBodySentencesZh.size());
      std::size_t second = rng.next_below(kBodySentencesZh.size() - 1);
      if (second >= first) ++second;
      el.content = fill_template(kBodySentencesZh[first], display) +
                   fill_template(kBodySentencesZh[second], display);
    } else {
      std::size_t first = rng.next_below(kBodySentencesEn.size());
      std::size_t second = rng.next_below(kBodySentencesEn.size() - 1);
      if (second >= first) ++second;
      el.content = fill_template(kBodySentencesEn[first], display) + " " +
                   fill_template(kBodySentencesEn[second], display);
    }
    slide.elements.push_back(std::move(el));
  }

  struct SizeRange {
    int lo, hi;
  };
  const SizeRange size_by_count[4] = {{300, 440}, {260, 380}, {220, 320}, {200, 280}};
  const SizeRange range = size_by_count[n_images - 1];

  for (int i = 0; i < n_images; ++i) {
    int w = rng.next_int(range.lo, range.hi);
    int h = rng.next_int(range.lo, range.hi);
    bool placed_ok = false;
    Rect rect{0, 0, 0, 0};
    for (int attempt = 0; attempt < 64; ++attempt) {
      if (attempt > 0 && attempt % 4 == 0) {
        // Crowded layouts converge by shrinking the candidate.
        w = std::max(120, static_cast<int>(w * 0.85));
        h = std::max(120, static_cast<int>(h * 0.85));
      }
      const int x_max = slide.canvas_w - w - 32;
      const int y_max = slide.canvas_h - h - 16;
      if (attempt < 24) {
        rect = Rect{rng.next_int(32, x_max), rng.next_int(content_top, y_max), w, h};
      } else {
        // Free placement keeps failing: snap to gap anchors next to the
        // edges of already-placed elements.
        std::vector<int> xs{32, x_max};
        std::vector<int> ys{content_top, y_max};
        for (const Rect& r : placed) {
          xs.push_back(std::clamp(r.x + r.w + 8, 32, x_max));
          xs.push_back(std::clamp(r.x - w - 8, 32, x_max));
          ys.push_back(std::clamp(r.y + r.h + 8, content_top, y_max));
          ys.push_back(std::clamp(r.y - h - 8, content_top, y_max));
        }
        rect = Rect{xs[rng.next_below(xs.size())], ys[rng.next_below(ys.size())], w, h};
      }
      if (overlap_ok(rect, placed)) {
        placed_ok = true;
        break;
      }
    }
    if (!placed_ok) {
      throw std::runtime_error("slide layout failed: no placement for image " +
                               std::to_string(i + 1) + " after 64 attempts");
    }
    placed.push_back(rect);
    const Topic& image_topic = kTopics[rng.next_below(kTopics.size())];
    char pool_ref[64];
    std::snprintf(pool_ref, sizeof(pool_ref), "pool://%s/%02d", image_topic.keyword_en,
                  static_cast<int>(rng.next_below(40)));
    Element el;
    el.name = "Img" + std::to_string(i + 1);
    el.kind = ElementKind::Image;
    el.x = rect.x;
    el.y = rect.y;
    el.w = rect.w;
    el.h = rect.h;
    el.content = pool_ref;
    slide.elements.push_back(std::move(el));
  }

  ValidationReport report = validate_slide(slide);
  if (!report.ok()) {
    throw std::logic_error("synthesized slide failed validation: " + report.items[0].message);
  }
  return slide;
}

AnimationPlan synth_scheme(std::uint64_t seed, const SlideSpec& slide,
                           const SynthConfig& config) {
  Rng rng(seed);
  const std::vector<double> pmf = step_count_pmf(config);
  std::vector<VariantWeight> tables[3][2];
  std::vector<double> table_weights[3][2];
  for (int c = 0; c < 3; ++c) {
    for (int kind = 0; kind < 2; ++kind) {
      tables[c][kind] = resolve_effect_weights(config, static_cast<Category>(c), kind == 1);
      for (const auto& vw : tables[c][kind]) table_weights[c][kind].push_back(vw.weight);
    }
  }

  const int n_elements = static_cast<int>(slide.elements.size());
  int k = config.step_min + static_cast<int>(rng.pick_weighted(pmf));
  k = std::max(k, n_elements);

  // Entrance order over the slide's elements.
  std::vector<std::string> pending;
  pending.reserve(static_cast<std::size_t>(n_elements));
  for (const auto& el : slide.elements) pending.push_back(el.name);
  for (std::size_t i = pending.size(); i > 1; --i) {
    std::swap(pending[i - 1], pending[rng.next_below(i)]);
  }

  // Slot 1 is always an entrance; the remaining entrances land on distinct
  // random slots so they interleave with emphasis and exit steps.
  std::vector<bool> entrance_slot(static_cast<std::size_t>(k), false);
  entrance_slot[0] = true;
  {
    std::vector<int> rest;
    for (int s = 1; s < k; ++s) rest.push_back(s);
    for (std::size_t i = rest.size(); i > 1; --i) {
      std::swap(rest[i - 1], rest[rng.next_below(i)]);
    }
    for (int i = 0; i < n_elements - 1 && i < static_cast<int>(rest.size()); ++i) {
      entrance_slot[static_cast<std::size_t>(rest[static_cast<std::size_t>(i)])] = true;
    }
  }

  enum class State { NeverEntered, Visible, Exited };
  std::map<std::string, State> state;
  for (const auto& el : slide.elements) state[el.name] = State::NeverEntered;
  std::size_t next_pending = 0;

  auto collect = [&](State wanted) {
    std::vector<std::string> out;
    for (const auto& el : slide.elements) {
      if (state[el.name] == wanted) out.push_back(el.name);
    }
    return out;
  };

  AnimationPlan plan;
  plan.slide_id = slide.slide_id;

  for (int slot = 0; slot < k; ++slot) {
    AnimationStep step;
    step.index = slot + 1;

    if (entrance_slot[static_cast<std::size_t>(slot)] && next_pending < pending.size()) {
      step.category = Category::Entrance;
      step.element = pending[next_pending++];
    } else {
      const std::vector<std::string> visible = collect(State::Visible);
      const std::vector<std::string> exited = collect(State::Exited);
      double w_emphasis = visible.empty() ? 0.0 : config.emphasis_weight;
      double w_exit = visible.empty() ? 0.0 : config.exit_weight;
      double w_reenter = exited.empty() ? 0.0 : config.reenter_weight;
      if (w_emphasis + w_exit + w_reenter <= 0.0) {
        // Degenerate weights; fall back to whatever is eligible.
        w_emphasis = visible.empty() ? 0.0 : 1.0;
        w_reenter = exited.empty() ? 0.0 : 1.0;
      }
      const std::size_t choice = rng.pick_weighted({w_emphasis, w_exit, w_reenter});
      if (choice == 0) {
        step.category = Category::Emphasis;
        step.element = visible[rng.next_below(visible.size())];
      } else if (choice == 1) {
        step.category = Category::Exit;
        step.element = visible[rng.next_below(visible.size())];
      } else {
        step.category = Category::Entrance;  // re-entrance after an exit
        step.element = exited[rng.next_below(exited.size())];
      }
    }

    switch (step.category) {
      case Category::Entrance: state[step.element] = State::Visible; break;
      case Category::Emphasis: break;
      case Category::Exit: state[step.element] = State::Exited; break;
    }

    const Element* el = slide.find_element(step.element);
    const int kind = el->kind == ElementKind::Image ? 1 : 0;
    const int cat = static_cast<int>(step.category);
    const VariantWeight& vw = tables[cat][kind][rng.pick_weighted(table_weights[cat][kind])];
    step.effect = vw.family;
    step.direction = vw.direction;
    step.duration_s = config.durations.choices[rng.pick_weighted(config.durations.weights)];
    step.delay_s = config.delays.choices[rng.pick_weighted(config.delays.weights)];
    step.repeat = 1 + static_cast<int>(rng.pick_weighted(config.repeat_weights));
    plan.steps.push_back(std::move(step));
  }

  ValidationReport report = validate_plan(plan, slide);
  if (!report.ok()) {
    throw std::logic_error("synthesized plan failed validation: " + report.items[0].message);
  }
  return plan;
}

std::string split_tag(const std::string& slide_id, int scheme_index) {
  return fnv1a64(slide_id + "/" + std::to_string(scheme_index)) % 12 == 0 ? "test" : "train";
}

std::size_t DatasetManifest::complete_count() const {
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.status == "complete") ++n;
  }
  return n;
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  ordered_json doc;
  doc["dataset_id"] = manifest.dataset_id;
  doc["seed"] = manifest.seed;
  doc["config"] = ordered_json::parse(manifest.config_json);
  doc["records"] = ordered_json::array();
  for (const auto& r : manifest.records) {
    ordered_json rec;
    rec["slide_id"] = r.slide_id;
    rec["scheme_index"] = r.scheme_index;
    rec["language"] = r.language;
    rec["slide_path"] = r.slide_path;
    rec["plan_path"] = r.plan_path;
    rec["description_path"] = r.description_path;
    rec["frames_dir"] = r.frames_dir;
    rec["render_manifest_path"] = r.render_manifest_path;
    rec["fps"] = r.fps;
    rec["split"] = r.split;
    rec["status"] = r.status;
    rec["annotation"] = r.annotation;
    doc["records"].push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("manifest is not valid JSON: ") + e.what());
  }
  DatasetManifest manifest;
  try {
    manifest.dataset_id = doc.at("dataset_id").get<std::string>();
    manifest.seed = doc.at("seed").get<std::uint64_t>();
    manifest.config_json = doc.at("config").dump();
    for (const auto& rec : doc.at("records")) {
      TripletRecord r;
      r.slide_id = rec.at("slide_id").get<std::string>();
      r.scheme_index = rec.at("scheme_index").get<int>();
      r.language = rec.value("language", std::string("en"));
      r.slide_path = rec.value("slide_path", std::string());
      r.plan_path = rec.at("plan_path").get<std::string>();
      r.description_path = rec.value("description_path", std::string());
      r.frames_dir = rec.value("frames_dir", std::string());
      r.render_manifest_path = rec.value("render_manifest_path", std::string());
      r.fps = rec.value("fps", 0.0);
      r.split = rec.value("split", std::string("train"));
      r.status = rec.value("status", std::string("complete"));
      r.annotation = rec.value("annotation", std::string());
      manifest.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed manifest: ") + e.what());
  }
  return manifest;
}

DatasetManifest load_manifest(const std::string& path) {
  try {
    return manifest_from_json(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

namespace {

std::string slide_dir_name(int slide_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "slide_%04d", slide_index);
  return buf;
}

std::string scheme_dir_name(int scheme_index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", scheme_index);
  return buf;
}

int dataset_worker_count(int jobs, std::size_t tasks) {
  unsigned n = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (n > tasks) n = static_cast<unsigned>(tasks);
  return static_cast<int>(n == 0 ? 1 : n);
}

}  // namespace

DatasetManifest synth_dataset(const SynthConfig& config, const std::string& out_root) {
  std::error_code ec;
  fs::create_directories(out_root, ec);
  if (ec) {
    throw std::runtime_error("cannot create dataset root '" + out_root + "': " + ec.message());
  }

  DatasetManifest manifest;
  manifest.dataset_id =
      config.dataset_id.empty() ? "slideanim-" + std::to_string(config.seed) : config.dataset_id;
  manifest.seed = config.seed;
  manifest.config_json = config_to_json(config);

  // Resume index: (slide_id, scheme_index) -> record completed on a
  // previous run. Resumed records keep their annotation so a re-run emits a
  // bit-identical manifest.
  std::map<std::pair<std::string, int>, std::string> completed_before;
  const std::string manifest_path = (fs::path(out_root) / "manifest.json").string();
  if (config.resume && fs::exists(manifest_path)) {
    DatasetManifest previous = load_manifest(manifest_path);
    for (const auto& r : previous.records) {
      if (r.status == "complete") completed_before[{r.slide_id, r.scheme_index}] = r.annotation;
    }
  }

  // Slides first; their seeds depend only on (master seed, slide index).
  std::vector<SlideSpec> slides;
  slides.reserve(static_cast<std::size_t>(config.n_slides));
  for (int i = 0; i < config.n_slides; ++i) {
    slides.push_back(synth_slide(derive_seed(config.seed, static_cast<std::uint64_t>(i), 0),
                                 config, slide_dir_name(i)));
    const fs::path slide_dir = fs::path(out_root) / slides.back().slide_id;
    fs::create_directories(slide_dir);
    write_text_file((slide_dir / "slide.json").string(), slide_to_json(slides.back()));
  }

  std::size_t total_records =
      static_cast<std::size_t>(config.n_slides) * static_cast<std::size_t>(config.schemes_per_slide);
  manifest.records.resize(total_records);

  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total_records) return;
      const int slide_index = static_cast<int>(idx) / config.schemes_per_slide;
      const int scheme_index = static_cast<int>(idx) % config.schemes_per_slide;
      const SlideSpec& slide = slides[static_cast<std::size_t>(slide_index)];

      TripletRecord record;
      record.slide_id = slide.slide_id;
      record.scheme_index = scheme_index;
      record.language = slide.language;
      record.fps = config.fps_list.empty() ? 2.0 : config.fps_list[idx % config.fps_list.size()];
      record.split = split_tag(slide.slide_id, scheme_index);

      const fs::path slide_dir = fs::path(out_root) / slide.slide_id;
      const fs::path scheme_dir = slide_dir / scheme_dir_name(scheme_index);
      const fs::path rel_slide = fs::path(slide.slide_id) / "slide.json";
      const fs::path rel_scheme = fs::path(slide.slide_id) / scheme_dir_name(scheme_index);
      record.slide_path = rel_slide.generic_string();
      record.plan_path = (rel_scheme / "plan.json").generic_string();
      record.description_path = (rel_scheme / "description.txt").generic_string();
      if (config.render) {
        record.frames_dir = (rel_scheme / "frames").generic_string();
        record.render_manifest_path = (rel_scheme / "render.manifest").generic_string();
      }

      try {
        auto done = completed_before.find({slide.slide_id, scheme_index});
        if (done != completed_before.end() &&
            fs::exists(fs::path(out_root) / record.plan_path) &&
            (!config.render ||
             fs::exists(fs::path(out_root) / record.render_manifest_path))) {
          record.status = "complete";
          record.annotation = done->second;
          manifest.records[idx] = std::move(record);
          continue;
        }

        fs::create_directories(scheme_dir);

        const std::uint64_t scheme_seed =
            derive_seed(config.seed, static_cast<std::uint64_t>(slide_index),
                        1 + static_cast<std::uint64_t>(scheme_index));
        AnimationPlan plan = synth_scheme(scheme_seed, slide, config);
        write_text_file((scheme_dir / "plan.json").string(), plan_to_json(plan));

        std::string narrative;
        if (!config.external_endpoint.empty()) {
          ServiceResult service =
              describe_via_service(plan, config.external_endpoint, config.external_timeout_s);
          narrative = service.narrative;
          record.annotation = service.used_external ? "external" : "fallback";
        } else {
          narrative = render_narrative(plan);
        }
        write_text_file((scheme_dir / "description.txt").string(),
                        format_action_list(plan) + "\n" + narrative + "\n");

        if (config.render) {
          RenderOptions options;
          options.placeholder_text = config.placeholder_text;
          options.placeholder_images = config.placeholder_images;
          options.jobs = 1;  // parallelism lives at the record level
          RenderManifest render = render_video(slide, plan, record.fps,
                                               (scheme_dir / "frames").string(), options);
          // The render manifest sits next to frames/ in the triplet layout.
          fs::rename(scheme_dir / "frames" / "render.manifest",
                     scheme_dir / "render.manifest");
          (void)render;
        }
        record.status = "complete";
      } catch (const std::exception& e) {
        record.status = std::string("failed: ") + e.what();
      }
      manifest.records[idx] = std::move(record);
    }
  };

  const int workers = dataset_worker_count(config.jobs, total_records);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  write_text_file(manifest_path, manifest_to_json(manifest));
  return manifest;
}

}  // namespace slideanim
