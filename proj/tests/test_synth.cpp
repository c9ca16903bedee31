#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <httplib.h>

#include "slideanim/catalog.hpp"
#include "slideanim/grammar.hpp"
#include "slideanim/json_io.hpp"
#include "slideanim/rng.hpp"
#include "slideanim/synth.hpp"
#include "slideanim/validate.hpp"

using namespace slideanim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / "slideanim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

SynthConfig tiny_config(std::uint64_t seed, int slides, int schemes) {
  SynthConfig config = default_config();
  config.seed = seed;
  config.n_slides = slides;
  config.schemes_per_slide = schemes;
  config.render = false;
  config.jobs = 2;
  return config;
}

// Serves one handler on an ephemeral port for the lifetime of the object.
struct StubServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  explicit StubServer(httplib::Server::Handler handler) {
    server.Post("/describe", std::move(handler));
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~StubServer() {
    server.stop();
    thread.join();
  }
};

}  // namespace

TEST_CASE("synth_slide is deterministic in the seed") {
  SynthConfig config = default_config();
  CHECK(slide_to_json(synth_slide(42, config)) == slide_to_json(synth_slide(42, config)));
  CHECK(slide_to_json(synth_slide(42, config)) != slide_to_json(synth_slide(43, config)));
}

TEST_CASE("synth_slide composition and bounds over many seeds") {
  SynthConfig config = default_config();
  int body_count = 0;
  int zh_count = 0;
  std::map<int, int> image_counts;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    SlideSpec slide = synth_slide(seed, config);
    CHECK(validate_slide(slide).ok());

    int images = 0;
    bool body = false;
    for (const auto& el : slide.elements) {
      CHECK(el.x >= 0);
      CHECK(el.y >= 0);
      CHECK(el.x + el.w <= slide.canvas_w);
      CHECK(el.y + el.h <= slide.canvas_h);
      if (el.kind == ElementKind::Image) ++images;
      if (el.kind == ElementKind::Body) body = true;
    }
    REQUIRE(images >= 1);
    REQUIRE(images <= 4);
    image_counts[images]++;
    if (body) ++body_count;
    if (slide.language == "zh") ++zh_count;
  }
  // All image counts occur; language and body mixes are near their settings.
  for (int n = 1; n <= 4; ++n) CHECK(image_counts[n] > 0);
  CHECK(body_count > 700);
  CHECK(body_count < 900);
  CHECK(zh_count > 400);
  CHECK(zh_count < 600);
}

TEST_CASE("pairwise overlap stays within ten percent of the smaller element") {
  SynthConfig config = default_config();
  for (std::uint64_t seed = 5000; seed < 5300; ++seed) {
    SlideSpec slide = synth_slide(seed, config);
    for (std::size_t a = 0; a < slide.elements.size(); ++a) {
      for (std::size_t b = a + 1; b < slide.elements.size(); ++b) {
        const Element& ea = slide.elements[a];
        const Element& eb = slide.elements[b];
        const long long dx =
            std::min(ea.x + ea.w, eb.x + eb.w) - std::max(ea.x, eb.x);
        const long long dy =
            std::min(ea.y + ea.h, eb.y + eb.h) - std::max(ea.y, eb.y);
        const long long inter = std::max(dx, 0ll) * std::max(dy, 0ll);
        const long long smaller = std::min(static_cast<long long>(ea.w) * ea.h,
                                           static_cast<long long>(eb.w) * eb.h);
        CHECK(inter * 10 <= smaller);
      }
    }
  }
}

TEST_CASE("synth_scheme output always validates cleanly") {
  SynthConfig config = default_config();
  Rng rng(990);
  for (int i = 0; i < 1000; ++i) {
    SlideSpec slide = synth_slide(rng.next_u64(), config);
    AnimationPlan plan = synth_scheme(rng.next_u64(), slide, config);
    ValidationReport report = validate_plan(plan, slide);
    CHECK(report.empty());  // no errors and no warnings
    CHECK(plan.steps.size() >= 4);
    CHECK(plan.steps.size() <= 15);

    // Every element receives an entrance.
    std::map<std::string, bool> entered;
    for (const auto& step : plan.steps) {
      if (step.category == Category::Entrance) entered[step.element] = true;
    }
    for (const auto& el : slide.elements) CHECK(entered[el.name]);
  }
}

TEST_CASE("scheme sampling tracks the configured distributions") {
  SynthConfig config = default_config();
  Rng rng(246);
  std::size_t total_steps = 0;
  std::size_t schemes = 0;
  std::map<std::string, int> text_entrance_counts;
  int text_entrances = 0;
  for (int i = 0; i < 3000; ++i) {
    SlideSpec slide = synth_slide(rng.next_u64(), config);
    AnimationPlan plan = synth_scheme(rng.next_u64(), slide, config);
    ++schemes;
    total_steps += plan.steps.size();
    for (const auto& step : plan.steps) {
      const Element* el = slide.find_element(step.element);
      if (step.category == Category::Entrance && el->kind != ElementKind::Image) {
        ++text_entrances;
        text_entrance_counts[variant_name(step.effect, step.direction)]++;
      }
    }
  }
  const double mean = static_cast<double>(total_steps) / static_cast<double>(schemes);
  CHECK(mean > 7.3);
  CHECK(mean < 7.9);

  const double box = 100.0 * text_entrance_counts["Box"] / text_entrances;
  const double blinds = 100.0 * text_entrance_counts["Blinds"] / text_entrances;
  CHECK(std::fabs(box - 19.3) < 2.0);
  CHECK(std::fabs(blinds - 15.2) < 2.0);
}

TEST_CASE("step_count_pmf is a normalized distribution with the right mean") {
  SynthConfig config = default_config();
  std::vector<double> pmf = step_count_pmf(config);
  REQUIRE(pmf.size() == 12);
  double total = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    total += pmf[k];
    mean += pmf[k] * (config.step_min + static_cast<double>(k));
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(mean == doctest::Approx(7.6));

  SynthConfig bad = config;
  bad.step_min = 2;
  CHECK_THROWS_AS(step_count_pmf(bad), std::invalid_argument);
}

TEST_CASE("resolved effect weights normalize and honor the named percentages") {
  SynthConfig config = default_config();
  auto weights = resolve_effect_weights(config, Category::Entrance, false);
  double total = 0.0;
  double box = 0.0, blinds = 0.0, fly_top = 0.0;
  for (const auto& vw : weights) {
    CHECK(vw.weight >= 0.0);
    total += vw.weight;
    const std::string name = variant_name(vw.family, vw.direction);
    if (name == "Box") box = vw.weight;
    if (name == "Blinds") blinds = vw.weight;
    if (name == "FlyFromTop") fly_top = vw.weight;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(box == doctest::Approx(0.193));
  CHECK(blinds == doctest::Approx(0.152));
  CHECK(fly_top == doctest::Approx(0.158));

  // Family-level mass splits across directions (exit Wipe 22.4 -> 5.6 each).
  auto exit_weights = resolve_effect_weights(config, Category::Exit, false);
  for (const auto& vw : exit_weights) {
    if (vw.family == "Wipe") CHECK(vw.weight == doctest::Approx(0.056));
  }

  SynthConfig bad = config;
  bad.effect_percent[0][0]["Spin"] = 5.0;  // Spin is emphasis-only
  CHECK_THROWS_AS(resolve_effect_weights(bad, Category::Entrance, false),
                  std::invalid_argument);
}

TEST_CASE("config JSON round trip preserves every field") {
  SynthConfig config = default_config();
  config.seed = 777;
  config.n_slides = 5;
  config.external_endpoint = "http://127.0.0.1:1/x";
  const std::string json = config_to_json(config);
  SynthConfig back = config_from_json(json);
  CHECK(config_to_json(back) == json);
  CHECK(back.seed == 777);
  CHECK(back.external_endpoint == config.external_endpoint);

  // Partial documents inherit the defaults.
  SynthConfig partial = config_from_json("{\"seed\": 9, \"n_slides\": 2}");
  CHECK(partial.seed == 9);
  CHECK(partial.n_slides == 2);
  CHECK(partial.schemes_per_slide == 40);

  CHECK_THROWS(config_from_json("{\"step_count\": {\"min\": 1}}"));
  CHECK_THROWS(config_from_json("not json"));
}

TEST_CASE("split_tag is deterministic and near one-in-twelve") {
  int test_count = 0;
  const int total = 12000;
  for (int slide = 0; slide < 300; ++slide) {
    for (int scheme = 0; scheme < 40; ++scheme) {
      const std::string id = "slide_" + std::to_string(slide);
      const std::string tag = split_tag(id, scheme);
      CHECK(tag == split_tag(id, scheme));
      if (tag == "test") ++test_count;
    }
  }
  const double fraction = static_cast<double>(test_count) / total;
  CHECK(fraction > 0.065);
  CHECK(fraction < 0.10);
}

TEST_CASE("synth_dataset builds the documented layout") {
  fs::path root = temp_dir("dataset_layout");
  SynthConfig config = tiny_config(11, 3, 2);
  DatasetManifest manifest = synth_dataset(config, root.string());

  CHECK(manifest.records.size() == 6);
  CHECK(manifest.complete_count() == 6);
  CHECK(fs::exists(root / "manifest.json"));
  for (const auto& record : manifest.records) {
    CHECK(record.status == "complete");
    CHECK(fs::exists(root / record.slide_path));
    CHECK(fs::exists(root / record.plan_path));
    CHECK(fs::exists(root / record.description_path));
    CHECK(record.frames_dir.empty());  // plan-only build
    CHECK((record.split == "train" || record.split == "test"));
    CHECK((record.language == "en" || record.language == "zh"));

    // The stored plan validates against the stored slide.
    SlideSpec slide = load_slide((root / record.slide_path).string());
    AnimationPlan plan = load_plan((root / record.plan_path).string());
    CHECK(validate_plan(plan, slide).ok());

    // description.txt = action list, blank line, narrative.
    const std::string description = read_bytes(root / record.description_path);
    CHECK(description.find("1. (Entrance) element '") != std::string::npos);
    CHECK(description.find("\n\n") != std::string::npos);
    CHECK(narrative_recovers_plan(description, plan) == false);  // both halves present
    std::vector<ActionUnit> units = extract_action_units(description);
    CHECK(units.size() == 2 * plan.steps.size());
  }
}

TEST_CASE("synth_dataset is deterministic and resumable") {
  fs::path root_a = temp_dir("dataset_a");
  fs::path root_b = temp_dir("dataset_b");
  SynthConfig config = tiny_config(21, 2, 3);

  synth_dataset(config, root_a.string());
  synth_dataset(config, root_b.string());
  CHECK(read_bytes(root_a / "manifest.json") == read_bytes(root_b / "manifest.json"));
  CHECK(read_bytes(root_a / "slide_0000" / "000" / "plan.json") ==
        read_bytes(root_b / "slide_0000" / "000" / "plan.json"));
  CHECK(read_bytes(root_a / "slide_0001" / "002" / "description.txt") ==
        read_bytes(root_b / "slide_0001" / "002" / "description.txt"));

  // Resume: a marker appended to a completed record's file survives re-run.
  const fs::path marker_file = root_a / "slide_0000" / "001" / "description.txt";
  const std::string original = read_bytes(marker_file);
  {
    std::ofstream f(marker_file, std::ios::binary | std::ios::app);
    f << "marker\n";
  }
  DatasetManifest again = synth_dataset(config, root_a.string());
  CHECK(again.complete_count() == 6);
  CHECK(read_bytes(marker_file) == original + "marker\n");
  // And the re-run manifest is still byte-identical.
  CHECK(read_bytes(root_a / "manifest.json") == read_bytes(root_b / "manifest.json"));
}

TEST_CASE("per-record seeds are splittable: regeneration is local and identical") {
  fs::path root = temp_dir("dataset_splittable");
  SynthConfig config = tiny_config(41, 2, 3);
  synth_dataset(config, root.string());

  const fs::path victim = root / "slide_0001" / "001" / "plan.json";
  const std::string original = read_bytes(victim);
  fs::remove(victim);

  DatasetManifest again = synth_dataset(config, root.string());
  CHECK(again.complete_count() == 6);
  CHECK(read_bytes(victim) == original);  // regenerated bit-identically

  // Disabling resume regenerates everything, still bit-identically.
  SynthConfig fresh = config;
  fresh.resume = false;
  synth_dataset(fresh, root.string());
  CHECK(read_bytes(victim) == original);
}

TEST_CASE("manifest JSON round trip") {
  fs::path root = temp_dir("manifest_roundtrip");
  SynthConfig config = tiny_config(31, 1, 2);
  DatasetManifest manifest = synth_dataset(config, root.string());
  DatasetManifest loaded = load_manifest((root / "manifest.json").string());
  CHECK(manifest_to_json(loaded) == manifest_to_json(manifest));
  CHECK(loaded.seed == 31);
  CHECK(loaded.records.size() == 2);
}

TEST_CASE("describe_via_service accepts an echoing endpoint") {
  SynthConfig config = default_config();
  SlideSpec slide = synth_slide(61, config);
  AnimationPlan plan = synth_scheme(62, slide, config);

  StubServer echo([](const httplib::Request& req, httplib::Response& res) {
    res.set_content(req.body, "text/plain");
  });
  ServiceResult result = describe_via_service(
      plan, "http://127.0.0.1:" + std::to_string(echo.port) + "/describe", 5.0);
  CHECK(result.used_external);
  CHECK(result.note.empty());
  CHECK(narrative_recovers_plan(result.narrative, plan));
}

TEST_CASE("describe_via_service falls back when the response drops a step") {
  SynthConfig config = default_config();
  SlideSpec slide = synth_slide(71, config);
  AnimationPlan plan = synth_scheme(72, slide, config);

  StubServer dropper([](const httplib::Request& req, httplib::Response& res) {
    const std::size_t cut = req.body.find('\n');
    res.set_content(req.body.substr(cut + 1), "text/plain");  // drop the first action
  });
  ServiceResult result = describe_via_service(
      plan, "http://127.0.0.1:" + std::to_string(dropper.port) + "/describe", 5.0);
  CHECK(!result.used_external);
  CHECK(result.note.find("recovery") != std::string::npos);
  CHECK(result.narrative == render_narrative(plan));  // template fallback
}

TEST_CASE("describe_via_service falls back when the endpoint is unreachable") {
  SynthConfig config = default_config();
  SlideSpec slide = synth_slide(81, config);
  AnimationPlan plan = synth_scheme(82, slide, config);
  ServiceResult result = describe_via_service(plan, "http://127.0.0.1:1/describe", 0.5);
  CHECK(!result.used_external);
  CHECK(!result.note.empty());
  CHECK(result.narrative == render_narrative(plan));
}

TEST_CASE("dataset builds annotate external narratives per record") {
  StubServer echo([](const httplib::Request& req, httplib::Response& res) {
    res.set_content(req.body, "text/plain");
  });
  fs::path root = temp_dir("dataset_external");
  SynthConfig config = tiny_config(91, 1, 2);
  config.external_endpoint = "http://127.0.0.1:" + std::to_string(echo.port) + "/describe";
  DatasetManifest manifest = synth_dataset(config, root.string());
  for (const auto& record : manifest.records) {
    CHECK(record.status == "complete");
    CHECK(record.annotation == "external");
  }

  // Unreachable endpoint: every record falls back but the build succeeds.
  fs::path root2 = temp_dir("dataset_fallback");
  config.external_endpoint = "http://127.0.0.1:1/describe";
  config.external_timeout_s = 0.5;
  DatasetManifest fallback = synth_dataset(config, root2.string());
  for (const auto& record : fallback.records) {
    CHECK(record.status == "complete");
    CHECK(record.annotation == "fallback");
  }
}
