#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "slideanim.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct StringDeleter {
  void operator()(char* s) const { sa_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

fs::path temp_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / "slideanim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kSlideJson = R"({
  "slide_id": "s1",
  "language": "en",
  "canvas": {"width": 1280, "height": 720},
  "elements": [
    {"name": "Title", "kind": "title", "x": 64, "y": 40, "w": 1152, "h": 100, "content": "Hi"},
    {"name": "Img1", "kind": "image", "x": 700, "y": 200, "w": 300, "h": 300,
     "content": "pool://x/1"}
  ]
})";

const char* kPlanJson = R"({
  "slide": "s1",
  "steps": [
    {"index": 1, "category": "entrance", "element": "Title", "effect": "Fade",
     "direction": null, "duration_s": 1.5, "delay_s": 0.0, "repeat": 1},
    {"index": 2, "category": "entrance", "element": "Img1", "effect": "FlyFrom",
     "direction": "left", "duration_s": 1.0, "delay_s": 0.5, "repeat": 2}
  ]
})";

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(sa_version() != nullptr);
  CHECK(sa_last_error() != nullptr);
}

TEST_CASE("plan and slide handles round trip through JSON") {
  sa_slide* slide = nullptr;
  REQUIRE(sa_slide_from_json(kSlideJson, &slide) == SA_OK);
  sa_plan* plan = nullptr;
  REQUIRE(sa_plan_from_json(kPlanJson, &plan) == SA_OK);

  CString slide_json(sa_slide_to_json(slide));
  REQUIRE(slide_json);
  CHECK(json::parse(slide_json.get())["slide_id"] == "s1");

  CString plan_json(sa_plan_to_json(plan));
  REQUIRE(plan_json);
  json parsed = json::parse(plan_json.get());
  CHECK(parsed["slide"] == "s1");
  CHECK(parsed["steps"].size() == 2);
  CHECK(parsed["steps"][0]["direction"].is_null());
  CHECK(parsed["steps"][1]["direction"] == "left");

  CHECK(sa_plan_duration(plan) == doctest::Approx(4.0));

  sa_plan_free(plan);
  sa_slide_free(slide);
}

TEST_CASE("validation reports flow through the C surface") {
  sa_slide* slide = nullptr;
  REQUIRE(sa_slide_from_json(kSlideJson, &slide) == SA_OK);
  sa_plan* plan = nullptr;
  REQUIRE(sa_plan_from_json(kPlanJson, &plan) == SA_OK);

  char* report_raw = nullptr;
  REQUIRE(sa_validate_plan(plan, slide, &report_raw) == SA_OK);
  CString report(report_raw);
  json doc = json::parse(report.get());
  CHECK(doc["ok"] == true);
  CHECK(doc["errors"].empty());

  // Mismatched slide_id is a usage error, not a validation finding.
  sa_plan* other = nullptr;
  std::string other_json = kPlanJson;
  other_json.replace(other_json.find("\"s1\""), 4, "\"zz\"");
  REQUIRE(sa_plan_from_json(other_json.c_str(), &other) == SA_OK);
  CHECK(sa_validate_plan(other, slide, nullptr) == SA_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(sa_last_error()) > 0);

  sa_plan_free(other);
  sa_plan_free(plan);
  sa_slide_free(slide);
}

TEST_CASE("grammar surfaces: action list, narrative, extraction") {
  sa_plan* plan = nullptr;
  REQUIRE(sa_plan_from_json(kPlanJson, &plan) == SA_OK);

  CString actions(sa_plan_action_list(plan));
  REQUIRE(actions);
  CHECK(std::string(actions.get())
            .rfind("1. (Entrance) element 'Title' fades in over 1.5 s, 0 s delay, repeat 1\n",
                   0) == 0);

  CString narrative(sa_plan_narrative(plan));
  REQUIRE(narrative);

  CString units_json(sa_extract_action_units(narrative.get()));
  REQUIRE(units_json);
  json units = json::parse(units_json.get());
  REQUIRE(units.size() == 2);
  CHECK(units[0]["element"] == "Title");
  CHECK(units[0]["category"] == "entrance");
  CHECK(units[1]["effect"] == "FlyFrom");
  CHECK(units[1]["direction"] == "left");

  sa_plan_free(plan);
}

TEST_CASE("catalog JSON lists the registered families") {
  CString catalog_json(sa_effect_catalog_json());
  REQUIRE(catalog_json);
  json catalog = json::parse(catalog_json.get());
  int emphasis = 0;
  bool fade_seen = false;
  for (const auto& entry : catalog) {
    if (entry["family"] == "Fade") {
      fade_seen = true;
      CHECK(entry["directional"] == false);
    }
    for (const auto& cat : entry["categories"]) {
      if (cat == "emphasis") ++emphasis;
    }
  }
  CHECK(fade_seen);
  CHECK(emphasis == 10);
}

TEST_CASE("rendering through the C API is deterministic") {
  sa_slide* slide = nullptr;
  REQUIRE(sa_slide_from_json(kSlideJson, &slide) == SA_OK);
  sa_plan* plan = nullptr;
  REQUIRE(sa_plan_from_json(kPlanJson, &plan) == SA_OK);

  fs::path dir_a = temp_dir("capi_render_a");
  fs::path dir_b = temp_dir("capi_render_b");
  REQUIRE(sa_render_video(slide, plan, 2.0, dir_a.string().c_str(),
                          SA_RENDER_PLACEHOLDER_IMAGES, 2) == SA_OK);
  REQUIRE(sa_render_video(slide, plan, 2.0, dir_b.string().c_str(),
                          SA_RENDER_PLACEHOLDER_IMAGES, 1) == SA_OK);

  auto read_bytes = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  };
  CHECK(read_bytes(dir_a / "render.manifest") == read_bytes(dir_b / "render.manifest"));
  CHECK(fs::exists(dir_a / "frame_00008.png"));  // 4.0 s at 2 FPS -> 9 frames
  CHECK(!fs::exists(dir_a / "frame_00009.png"));

  sa_plan_free(plan);
  sa_slide_free(slide);
}

TEST_CASE("dataset synthesis, stats and eval through the C API") {
  CString preset(sa_config_preset("paper_default"));
  REQUIRE(preset);
  json config = json::parse(preset.get());
  config["seed"] = 99;
  config["n_slides"] = 2;
  config["schemes_per_slide"] = 2;
  config["render"] = false;
  config["jobs"] = 2;

  fs::path root = temp_dir("capi_dataset");
  char* manifest_raw = nullptr;
  REQUIRE(sa_synth_dataset(config.dump().c_str(), root.string().c_str(), &manifest_raw) ==
          SA_OK);
  CString manifest_path(manifest_raw);
  CHECK(fs::exists(manifest_path.get()));

  fs::path stats_dir = temp_dir("capi_stats");
  char* summary_raw = nullptr;
  REQUIRE(sa_dataset_stats(manifest_path.get(), stats_dir.string().c_str(), SA_STATS_SVG,
                           &summary_raw) == SA_OK);
  CString summary(summary_raw);
  CHECK(std::string(summary.get()).find("schemes:") != std::string::npos);
  CHECK(fs::exists(stats_dir / "effect_frequencies.csv"));
  CHECK(fs::exists(stats_dir / "step_count_histogram.svg"));

  // Line-aligned eval over a description file evaluated against itself.
  fs::path eval_dir = temp_dir("capi_eval");
  const fs::path pred = eval_dir / "pred.txt";
  {
    std::ofstream f(pred);
    f << "First, the element 'Title' fades in over 1.5 seconds.\n";
    f << "First, the element 'Img1' spins over 2.0 seconds.\n";
  }
  char* eval_summary_raw = nullptr;
  REQUIRE(sa_evaluate_corpus_files(pred.string().c_str(), pred.string().c_str(),
                                   (eval_dir / "report").string().c_str(),
                                   &eval_summary_raw) == SA_OK);
  CString eval_summary(eval_summary_raw);
  CHECK(std::string(eval_summary.get()).find("mean coda_coverage: 1.000000") !=
        std::string::npos);
  CHECK(fs::exists(eval_dir / "report" / "pairs.csv"));

  // Misaligned files are a usage error.
  const fs::path shorter = eval_dir / "short.txt";
  {
    std::ofstream f(shorter);
    f << "only one line\n";
  }
  CHECK(sa_evaluate_corpus_files(pred.string().c_str(), shorter.string().c_str(),
                                 (eval_dir / "report2").string().c_str(),
                                 nullptr) == SA_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("pair evaluation reports every metric") {
  CString pair(sa_evaluate_pair("First, the element 'Title' fades in over 1.5 seconds.",
                                "First, the element 'Title' fades in over 1.5 seconds."));
  REQUIRE(pair);
  json doc = json::parse(pair.get());
  CHECK(doc["bleu4"] == doctest::Approx(1.0));
  CHECK(doc["rougeL"] == doctest::Approx(1.0));
  CHECK(doc["coda_coverage"] == doctest::Approx(1.0));
  CHECK(doc["coda_detail"] == doctest::Approx(1.0));
}

TEST_CASE("error paths set status codes and messages") {
  sa_plan* plan = nullptr;
  CHECK(sa_plan_from_json("not json at all", &plan) == SA_ERROR_PARSE);
  CHECK(std::strlen(sa_last_error()) > 0);
  CHECK(sa_plan_load("/nonexistent/plan.json", &plan) == SA_ERROR_IO);
  CHECK(sa_plan_from_json(nullptr, &plan) == SA_ERROR_INVALID_ARGUMENT);
  CHECK(sa_slide_to_json(nullptr) == nullptr);
  CHECK(sa_config_preset("no_such_preset") == nullptr);
  CHECK(sa_extract_action_units(nullptr) == nullptr);
}
