// End-to-end checks of the installed CLI binary: exit-code contract and
// file side effects. The binary path arrives via SLIDEANIM_CLI (set by the
// CTest environment).

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "slideanim/json_io.hpp"
#include "slideanim/synth.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("SLIDEANIM_CLI");
  if (env != nullptr) return env;
  return "build/tools/slideanim";  // fallback for manual runs from the repo root
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out_file = fs::temp_directory_path() / "slideanim_tests" / "cli_out.txt";
  fs::create_directories(out_file.parent_path());
  const std::string command =
      cli_path() + " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream f(out_file);
  result.output.assign((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return result;
}

fs::path temp_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / "slideanim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("--definitely-not-a-flag").exit_code == 2);
  CHECK(run_cli("no_such_subcommand").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("synth then describe, validate, stats and eval") {
  fs::path root = temp_dir("cli_dataset");
  RunResult synth = run_cli("synth --config paper_default --seed 5 --n-slides 3 --schemes 2 "
                            "--no-render --jobs 2 --out " +
                            root.string());
  REQUIRE(synth.exit_code == 0);
  CHECK(synth.output.find("[slideanim") != std::string::npos);  // config banner
  CHECK(synth.output.find("\"seed\":5") != std::string::npos);
  REQUIRE(fs::exists(root / "manifest.json"));

  // 3 slides x 2 schemes: six triplets on disk.
  int plans = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.path().filename() == "plan.json") ++plans;
  }
  CHECK(plans == 6);

  const std::string plan = (root / "slide_0000" / "000" / "plan.json").string();
  const std::string slide = (root / "slide_0000" / "slide.json").string();

  RunResult describe = run_cli("describe " + plan);
  CHECK(describe.exit_code == 0);
  CHECK(describe.output.find("1. (Entrance) element '") != std::string::npos);
  CHECK(describe.output.find("First, the element '") != std::string::npos);

  RunResult validate = run_cli("validate --plan " + plan + " --slide " + slide);
  CHECK(validate.exit_code == 0);
  CHECK(validate.output.find("\"ok\": true") != std::string::npos);

  // A plan referencing a missing element fails validation with exit 1.
  fs::path bad_plan = root / "bad_plan.json";
  {
    slideanim::AnimationPlan broken = slideanim::load_plan(plan);
    broken.steps[0].element = "Ghost";
    std::ofstream f(bad_plan);
    f << slideanim::plan_to_json(broken);
  }
  RunResult invalid = run_cli("validate --plan " + bad_plan.string() + " --slide " + slide);
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.output.find("unknown_element") != std::string::npos);

  fs::path stats_out = temp_dir("cli_stats");
  RunResult stats = run_cli("stats --manifest " + (root / "manifest.json").string() +
                            " --out " + stats_out.string() + " --svg");
  CHECK(stats.exit_code == 0);
  CHECK(fs::exists(stats_out / "summary.txt"));
  CHECK(fs::exists(stats_out / "effect_frequencies.svg"));

  // eval with identical files: CODA columns are all 1.
  fs::path eval_dir = temp_dir("cli_eval");
  fs::path pred = eval_dir / "pred.txt";
  {
    std::ofstream f(pred);
    f << "First, the element 'Title' fades in over 1.5 seconds.\n";
  }
  RunResult eval = run_cli("eval --pred " + pred.string() + " --ref " + pred.string() +
                           " --out " + (eval_dir / "report").string());
  CHECK(eval.exit_code == 0);
  CHECK(eval.output.find("mean coda_coverage: 1.000000") != std::string::npos);
  CHECK(eval.output.find("mean coda_order: 1.000000") != std::string::npos);
  CHECK(eval.output.find("mean coda_detail: 1.000000") != std::string::npos);
  CHECK(fs::exists(eval_dir / "report" / "pairs.csv"));

  // Missing input file: non-zero failure, not a crash.
  CHECK(run_cli("describe /nonexistent/plan.json").exit_code == 1);
}

TEST_CASE("render subcommand writes frames and respects the frame grid") {
  fs::path root = temp_dir("cli_render_src");
  REQUIRE(run_cli("synth --config paper_default --seed 8 --n-slides 1 --schemes 1 "
                  "--no-render --out " +
                  root.string())
              .exit_code == 0);

  // A fixed 4-second plan gives an exact 9-frame check at 2 FPS.
  fs::path plan_path = root / "four_seconds.json";
  {
    std::ofstream f(plan_path);
    f << R"({"slide": "slide_0000", "steps": [
      {"index": 1, "category": "entrance", "element": "Title", "effect": "Fade",
       "direction": null, "duration_s": 2.0, "delay_s": 0.0, "repeat": 1},
      {"index": 2, "category": "entrance", "element": "Img1", "effect": "Fade",
       "direction": null, "duration_s": 2.0, "delay_s": 0.0, "repeat": 1}]})";
  }
  fs::path frames = temp_dir("cli_frames");
  RunResult render = run_cli("render --plan " + plan_path.string() + " --slide " +
                             (root / "slide_0000" / "slide.json").string() +
                             " --fps 2 --out " + frames.string() + " --placeholder-images");
  REQUIRE(render.exit_code == 0);
  int pngs = 0;
  for (const auto& entry : fs::directory_iterator(frames)) {
    if (entry.path().extension() == ".png") ++pngs;
  }
  CHECK(pngs == 9);
  CHECK(fs::exists(frames / "render.manifest"));

  // Unusual fps values warn but proceed.
  fs::path frames3 = temp_dir("cli_frames3");
  RunResult odd = run_cli("render --plan " + plan_path.string() + " --slide " +
                          (root / "slide_0000" / "slide.json").string() +
                          " --fps 3 --out " + frames3.string() + " --placeholder-images");
  CHECK(odd.exit_code == 0);
  CHECK(odd.output.find("warning") != std::string::npos);
}
