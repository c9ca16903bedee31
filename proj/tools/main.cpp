// slideanim command-line tool. Everything goes through the C API in
// slideanim.h; this binary owns only argument parsing and console output.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slideanim.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct StringDeleter {
  void operator()(char* s) const { sa_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct SlideDeleter {
  void operator()(sa_slide* s) const { sa_slide_free(s); }
};
struct PlanDeleter {
  void operator()(sa_plan* p) const { sa_plan_free(p); }
};

int fail(const std::string& context) {
  std::fprintf(stderr, "error: %s: %s\n", context.c_str(), sa_last_error());
  return kExitValidation;
}

void warn_fps(double fps) {
  if (fps != 1.0 && fps != 2.0 && fps != 4.0) {
    std::fprintf(stderr, "warning: fps %g is outside the usual {1, 2, 4} set\n", fps);
  }
}

std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) throw CLI::ValidationError("cannot open '" + path + "'");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, n);
  std::fclose(f);
  return out;
}

// Effective-config banner: every run is reproducible from this line.
void print_banner(const std::string& subcommand, const ordered_json& effective) {
  std::printf("[slideanim %s] %s %s\n", sa_version(), subcommand.c_str(),
              effective.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slideanim: slide-animation dataset synthesis and caption metrics"};
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Synthesize a triplet dataset");
  std::string synth_config = "paper_default";
  std::string synth_out = "dataset";
  std::uint64_t synth_seed = 0;
  bool synth_seed_set = false;
  int synth_slides = -1, synth_schemes = -1, synth_jobs = -1;
  double synth_fps = 0.0;
  bool synth_no_render = false, synth_placeholder_text = false;
  bool synth_resume = true, synth_placeholder_images = false;
  std::string synth_endpoint;
  synth->add_option("--config", synth_config,
                    "Config preset name or path to a config JSON file");
  synth->add_option("--out", synth_out, "Dataset root directory");
  synth->add_option("--seed", synth_seed, "Master seed override")
      ->each([&](const std::string&) { synth_seed_set = true; });
  synth->add_option("--n-slides", synth_slides, "Number of slides override");
  synth->add_option("--schemes", synth_schemes, "Schemes per slide override");
  synth->add_option("--fps", synth_fps, "Frame rate override");
  synth->add_option("--jobs", synth_jobs, "Worker count (0 = all cores)");
  synth->add_flag("--no-render", synth_no_render, "Plan-only build, skip frame rendering");
  synth->add_flag("--resume,!--no-resume", synth_resume,
                  "Skip triplets already complete under --out (default on)");
  synth->add_flag("--placeholder-text", synth_placeholder_text,
                  "Render hatched blocks instead of glyphs");
  synth->add_flag("--placeholder-images", synth_placeholder_images,
                  "Procedural patterns for all image elements (default for pool:// refs)");
  synth->add_option("--endpoint", synth_endpoint,
                    "External text-generator endpoint (opt-in)");

  // ---- render ---------------------------------------------------------
  auto* render = app.add_subcommand("render", "Render one plan to a frame sequence");
  std::string render_plan, render_slide, render_out = "frames";
  double render_fps = 2.0;
  int render_jobs = 0;
  bool render_placeholder_text = false, render_placeholder_images = false;
  std::string render_encoder;
  render->add_option("--plan", render_plan, "Plan JSON document")->required();
  render->add_option("--slide", render_slide, "Slide JSON document")->required();
  render->add_option("--fps", render_fps, "Frame rate");
  render->add_option("--out", render_out, "Output directory");
  render->add_option("--jobs", render_jobs, "Frame-render workers (0 = all cores)");
  render->add_flag("--placeholder-text", render_placeholder_text,
                   "Render hatched blocks instead of glyphs");
  render->add_flag("--placeholder-images", render_placeholder_images,
                   "Procedural patterns instead of image assets");
  render->add_option("--encoder-cmd", render_encoder,
                     "Shell command run after rendering; {dir} and {fps} are substituted "
                     "(e.g. container muxing via ffmpeg)");

  // ---- describe -------------------------------------------------------
  auto* describe = app.add_subcommand("describe", "Print a plan's action list and narrative");
  std::string describe_plan;
  describe->add_option("plan", describe_plan, "Plan JSON document")->required();

  // ---- eval -----------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Score predictions against references");
  std::string eval_pred, eval_ref, eval_out = "eval_report";
  eval->add_option("--pred", eval_pred, "Predictions, one description per line")->required();
  eval->add_option("--ref", eval_ref, "References, line-aligned with --pred")->required();
  eval->add_option("--out", eval_out, "Report directory");

  // ---- stats ----------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "Dataset statistics reports");
  std::string stats_manifest, stats_out = "stats_report";
  bool stats_svg = false;
  stats->add_option("--manifest", stats_manifest, "Dataset manifest.json")->required();
  stats->add_option("--out", stats_out, "Report directory");
  stats->add_flag("--svg", stats_svg, "Also emit bar-chart SVGs");

  // ---- validate -------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Validate a plan against a slide");
  std::string validate_plan, validate_slide;
  validate->add_option("--plan", validate_plan, "Plan JSON document")->required();
  validate->add_option("--slide", validate_slide, "Slide JSON document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (synth->parsed()) {
      std::string config_json;
      if (synth_config.find('.') == std::string::npos &&
          synth_config.find('/') == std::string::npos) {
        CString preset(sa_config_preset(synth_config.c_str()));
        if (!preset) return fail("config preset '" + synth_config + "'");
        config_json = preset.get();
      } else {
        config_json = read_file(synth_config);
      }
      ordered_json config = ordered_json::parse(config_json);
      if (synth_seed_set) config["seed"] = synth_seed;
      if (synth_slides >= 0) config["n_slides"] = synth_slides;
      if (synth_schemes >= 0) config["schemes_per_slide"] = synth_schemes;
      if (synth_fps > 0.0) config["fps_list"] = std::vector<double>{synth_fps};
      if (synth_jobs >= 0) config["jobs"] = synth_jobs;
      if (synth_no_render) config["render"] = false;
      if (!synth_resume) config["resume"] = false;
      if (synth_placeholder_text) config["placeholder_text"] = true;
      if (synth_placeholder_images) config["placeholder_images"] = true;
      if (!synth_endpoint.empty()) config["external_endpoint"] = synth_endpoint;
      for (double fps : config["fps_list"].get<std::vector<double>>()) warn_fps(fps);

      print_banner("synth", ordered_json{{"out", synth_out}, {"config", config}});
      CString manifest_path;
      char* manifest_raw = nullptr;
      if (sa_synth_dataset(config.dump().c_str(), synth_out.c_str(), &manifest_raw) != SA_OK) {
        return fail("synth");
      }
      manifest_path.reset(manifest_raw);
      std::printf("manifest: %s\n", manifest_path.get());
      return kExitOk;
    }

    if (render->parsed()) {
      warn_fps(render_fps);
      print_banner("render", ordered_json{{"plan", render_plan},
                                          {"slide", render_slide},
                                          {"fps", render_fps},
                                          {"out", render_out}});
      std::unique_ptr<sa_plan, PlanDeleter> plan;
      std::unique_ptr<sa_slide, SlideDeleter> slide;
      {
        sa_plan* p = nullptr;
        if (sa_plan_load(render_plan.c_str(), &p) != SA_OK) return fail(render_plan);
        plan.reset(p);
        sa_slide* s = nullptr;
        if (sa_slide_load(render_slide.c_str(), &s) != SA_OK) return fail(render_slide);
        slide.reset(s);
      }
      uint32_t flags = 0;
      if (render_placeholder_text) flags |= SA_RENDER_PLACEHOLDER_TEXT;
      if (render_placeholder_images) flags |= SA_RENDER_PLACEHOLDER_IMAGES;
      if (sa_render_video(slide.get(), plan.get(), render_fps, render_out.c_str(), flags,
                          render_jobs) != SA_OK) {
        return fail("render");
      }
      std::printf("frames written to %s\n", render_out.c_str());
      if (!render_encoder.empty()) {
        std::string command = render_encoder;
        auto substitute = [&command](const std::string& key, const std::string& value) {
          for (std::string::size_type pos; (pos = command.find(key)) != std::string::npos;) {
            command.replace(pos, key.size(), value);
          }
        };
        substitute("{dir}", render_out);
        substitute("{fps}", std::to_string(render_fps));
        std::printf("running encoder: %s\n", command.c_str());
        const int status = std::system(command.c_str());
        if (status != 0) {
          std::fprintf(stderr, "warning: encoder command exited with status %d\n", status);
        }
      }
      return kExitOk;
    }

    if (describe->parsed()) {
      print_banner("describe", ordered_json{{"plan", describe_plan}});
      std::unique_ptr<sa_plan, PlanDeleter> plan;
      sa_plan* p = nullptr;
      if (sa_plan_load(describe_plan.c_str(), &p) != SA_OK) return fail(describe_plan);
      plan.reset(p);
      CString actions(sa_plan_action_list(plan.get()));
      if (!actions) return fail("action list");
      CString narrative(sa_plan_narrative(plan.get()));
      if (!narrative) return fail("narrative");
      std::printf("%s\n%s\n", actions.get(), narrative.get());
      return kExitOk;
    }

    if (eval->parsed()) {
      print_banner("eval",
                   ordered_json{{"pred", eval_pred}, {"ref", eval_ref}, {"out", eval_out}});
      CString summary;
      char* summary_raw = nullptr;
      if (sa_evaluate_corpus_files(eval_pred.c_str(), eval_ref.c_str(), eval_out.c_str(),
                                   &summary_raw) != SA_OK) {
        return fail("eval");
      }
      summary.reset(summary_raw);
      std::printf("%s", summary.get());
      std::printf("reports written to %s\n", eval_out.c_str());
      return kExitOk;
    }

    if (stats->parsed()) {
      print_banner("stats", ordered_json{{"manifest", stats_manifest},
                                         {"out", stats_out},
                                         {"svg", stats_svg}});
      CString summary;
      char* summary_raw = nullptr;
      if (sa_dataset_stats(stats_manifest.c_str(), stats_out.c_str(),
                           stats_svg ? SA_STATS_SVG : 0, &summary_raw) != SA_OK) {
        return fail("stats");
      }
      summary.reset(summary_raw);
      std::printf("%s", summary.get());
      std::printf("reports written to %s\n", stats_out.c_str());
      return kExitOk;
    }

    if (validate->parsed()) {
      print_banner("validate",
                   ordered_json{{"plan", validate_plan}, {"slide", validate_slide}});
      std::unique_ptr<sa_plan, PlanDeleter> plan;
      std::unique_ptr<sa_slide, SlideDeleter> slide;
      sa_plan* p = nullptr;
      if (sa_plan_load(validate_plan.c_str(), &p) != SA_OK) return fail(validate_plan);
      plan.reset(p);
      sa_slide* s = nullptr;
      if (sa_slide_load(validate_slide.c_str(), &s) != SA_OK) return fail(validate_slide);
      slide.reset(s);

      CString report;
      char* report_raw = nullptr;
      if (sa_validate_plan(plan.get(), slide.get(), &report_raw) != SA_OK) {
        return fail("validate");
      }
      report.reset(report_raw);
      std::printf("%s", report.get());
      ordered_json doc = ordered_json::parse(report.get());
      return doc["ok"].get<bool>() ? kExitOk : kExitValidation;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }

  return kExitUsage;
}
