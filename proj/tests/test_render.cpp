#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "slideanim/catalog.hpp"
#include "slideanim/json_io.hpp"
#include "slideanim/render.hpp"
#include "slideanim/rng.hpp"
#include "slideanim/synth.hpp"

using namespace slideanim;
namespace fs = std::filesystem;

namespace {

SlideSpec test_slide() {
  SlideSpec slide;
  slide.slide_id = "s1";
  slide.elements.push_back(Element{"Title", ElementKind::Title, 64, 40, 1152, 100, "Hello"});
  slide.elements.push_back(Element{"Img1", ElementKind::Image, 700, 200, 300, 300, "pool://x/1"});
  return slide;
}

AnimationStep make_step(int index, Category cat, const char* element, const char* effect,
                        Direction dir = Direction::None, double duration = 1.0,
                        double delay = 0.0, int repeat = 1) {
  AnimationStep step;
  step.index = index;
  step.category = cat;
  step.element = element;
  step.effect = effect;
  step.direction = dir;
  step.duration_s = duration;
  step.delay_s = delay;
  step.repeat = repeat;
  return step;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

fs::path temp_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / "slideanim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::set<std::pair<int, int>> revealed_pixels(const MaskState& mask, int w, int h) {
  std::set<std::pair<int, int>> pixels;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask_reveals(mask, x, y, w, h)) pixels.insert({x, y});
    }
  }
  return pixels;
}

}  // namespace

TEST_CASE("effect_transform per-family semantics") {
  Element img{"Img1", ElementKind::Image, 700, 200, 300, 300, ""};

  ElementVisual fade = effect_transform("Fade", Category::Entrance, Direction::None, 0.5, img,
                                        1280, 720);
  CHECK(fade.alpha == doctest::Approx(0.5));
  CHECK(fade.dx == doctest::Approx(0.0));
  CHECK(fade.scale == doctest::Approx(1.0));
  CHECK(fade.mask.kind == MaskKind::None);

  ElementVisual fly = effect_transform("FlyFrom", Category::Entrance, Direction::Left, 0.0, img,
                                       1280, 720);
  CHECK(fly.dx == doctest::Approx(-(img.x + img.w)));
  CHECK(fly.dy == doctest::Approx(0.0));

  ElementVisual fly_right = effect_transform("FlyFrom", Category::Entrance, Direction::Right,
                                             0.0, img, 1280, 720);
  CHECK(fly_right.dx == doctest::Approx(1280 - img.x));

  ElementVisual spin =
      effect_transform("Spin", Category::Emphasis, Direction::None, 0.25, img, 1280, 720);
  CHECK(spin.rotation_deg == doctest::Approx(90.0));

  ElementVisual flash =
      effect_transform("FlashBulb", Category::Emphasis, Direction::None, 0.5, img, 1280, 720);
  CHECK(flash.brightness == doctest::Approx(1.75));

  ElementVisual grow =
      effect_transform("GrowShrink", Category::Emphasis, Direction::None, 0.5, img, 1280, 720);
  CHECK(grow.scale == doctest::Approx(1.5));

  ElementVisual teeter =
      effect_transform("Teeter", Category::Emphasis, Direction::None, 0.125, img, 1280, 720);
  CHECK(teeter.rotation_deg == doctest::Approx(5.0));  // 5 * sin(pi/2)
}

TEST_CASE("entrance completes at rest pose; exit mirrors entrance") {
  Element img{"Img1", ElementKind::Image, 700, 200, 300, 300, ""};
  for (const char* family :
       {"Fade", "Wipe", "Box", "Blinds", "Checkerboard", "Circle", "Pinwheel"}) {
    const EffectKind* kind = find_effect(family);
    const Direction dir = kind->directional ? Direction::Left : Direction::None;
    ElementVisual done =
        effect_transform(family, Category::Entrance, dir, 1.0, img, 1280, 720);
    CHECK(done.alpha == doctest::Approx(1.0));
    CHECK(done.dx == doctest::Approx(0.0));
    CHECK(done.mask.progress == doctest::Approx(1.0));

    // Exit at p equals entrance at 1-p.
    ElementVisual exit_mid = effect_transform(family, Category::Exit, dir, 0.75, img, 1280, 720);
    ElementVisual enter_mid =
        effect_transform(family, Category::Entrance, dir, 0.25, img, 1280, 720);
    CHECK(exit_mid.alpha == doctest::Approx(enter_mid.alpha));
    CHECK(exit_mid.mask.progress == doctest::Approx(enter_mid.mask.progress));
  }

  ElementVisual fade_exit =
      effect_transform("Fade", Category::Exit, Direction::None, 0.25, img, 1280, 720);
  CHECK(fade_exit.alpha == doctest::Approx(0.75));

  ElementVisual fly_exit =
      effect_transform("FlyTo", Category::Exit, Direction::Bottom, 1.0, img, 1280, 720);
  CHECK(fly_exit.dy == doctest::Approx(720 - img.y));

  CHECK_THROWS_AS(
      effect_transform("Nonsense", Category::Entrance, Direction::None, 0.5, img, 1280, 720),
      std::invalid_argument);
  CHECK_THROWS_AS(
      effect_transform("Wipe", Category::Entrance, Direction::None, 0.5, img, 1280, 720),
      std::invalid_argument);
  CHECK_THROWS_AS(
      effect_transform("Fade", Category::Entrance, Direction::Left, 0.5, img, 1280, 720),
      std::invalid_argument);
}

TEST_CASE("reveal masks are empty at p=0, full at p=1 and monotone in between") {
  const int w = 40, h = 30;
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const MaskKind kinds[] = {MaskKind::Wipe, MaskKind::Box, MaskKind::Blinds,
                            MaskKind::Checkerboard, MaskKind::Circle, MaskKind::Pinwheel};
  for (MaskKind kind : kinds) {
    std::set<std::pair<int, int>> previous;
    for (double p : grid) {
      MaskState mask;
      mask.kind = kind;
      mask.direction = Direction::Bottom;
      mask.progress = p;
      std::set<std::pair<int, int>> revealed = revealed_pixels(mask, w, h);
      if (p == 0.0) CHECK(revealed.empty());
      if (p == 1.0) CHECK(revealed.size() == static_cast<std::size_t>(w) * h);
      for (const auto& px : previous) CHECK(revealed.count(px) == 1);
      previous = std::move(revealed);
    }
  }

  // Wipe direction controls which edge reveals first.
  MaskState wipe_left{MaskKind::Wipe, Direction::Left, 0.3};
  CHECK(mask_reveals(wipe_left, 0, 15, w, h));
  CHECK(!mask_reveals(wipe_left, w - 1, 15, w, h));
  MaskState wipe_bottom{MaskKind::Wipe, Direction::Bottom, 0.3};
  CHECK(mask_reveals(wipe_bottom, 20, h - 1, w, h));
  CHECK(!mask_reveals(wipe_bottom, 20, 0, w, h));
}

TEST_CASE("rasterize: hidden elements leave the background untouched") {
  SlideSpec slide = test_slide();
  FrameState state;
  for (const auto& el : slide.elements) {
    ElementVisual hidden;
    hidden.visible = false;
    state.by_element[el.name] = hidden;
  }
  RenderOptions options;
  options.placeholder_images = true;
  Image frame = rasterize(slide, state, options);
  for (std::size_t i = 0; i < frame.rgba.size(); i += 4) {
    REQUIRE(frame.rgba[i] == 255);
    REQUIRE(frame.rgba[i + 3] == 255);
  }
}

TEST_CASE("alpha midpoint blend stays within 1/255 of the analytic value") {
  // 4x4 solid-color asset loaded from a PAM file.
  fs::path dir = temp_dir("alpha_oracle");
  Image solid(4, 4, 200, 60, 30, 255);
  const fs::path asset = dir / "solid.pam";
  write_pam(solid, asset.string());

  SlideSpec slide;
  slide.slide_id = "s";
  slide.canvas_w = 16;
  slide.canvas_h = 16;
  slide.elements.push_back(Element{"T", ElementKind::Title, 0, 0, 4, 4, ""});
  slide.elements.push_back(Element{"Px", ElementKind::Image, 6, 6, 4, 4, asset.string()});

  FrameState state;
  ElementVisual faded = rest_pose();
  faded.alpha = 0.5;
  state.by_element["Px"] = faded;
  ElementVisual hidden;
  hidden.visible = false;
  state.by_element["T"] = hidden;

  RenderOptions options;  // placeholder_images off: go through the asset loader
  Image frame = rasterize(slide, state, options);

  auto analytic = [](double src, double dst, double a) { return src * a + dst * (1.0 - a); };
  const std::uint8_t* px = frame.pixel(7, 7);
  CHECK(std::abs(px[0] - analytic(200, 255, 0.5)) <= 1.0);
  CHECK(std::abs(px[1] - analytic(60, 255, 0.5)) <= 1.0);
  CHECK(std::abs(px[2] - analytic(30, 255, 0.5)) <= 1.0);
}

TEST_CASE("missing image assets raise an error naming the asset") {
  SlideSpec slide;
  slide.slide_id = "s";
  slide.canvas_w = 32;
  slide.canvas_h = 32;
  slide.elements.push_back(Element{"T", ElementKind::Title, 0, 0, 8, 8, ""});
  slide.elements.push_back(
      Element{"Img", ElementKind::Image, 8, 8, 8, 8, "/nonexistent/asset.pam"});

  RenderOptions options;
  try {
    ElementRenderCache cache(slide, options);
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("/nonexistent/asset.pam") != std::string::npos);
  }

  // Placeholder mode never touches the filesystem.
  options.placeholder_images = true;
  CHECK_NOTHROW(ElementRenderCache(slide, options));
}

TEST_CASE("off-canvas fly positions clip instead of failing") {
  SlideSpec slide = test_slide();
  FrameState state;
  ElementVisual flying = rest_pose();
  flying.dx = -5000.0;  // far off-canvas
  state.by_element["Img1"] = flying;
  ElementVisual hidden;
  hidden.visible = false;
  state.by_element["Title"] = hidden;
  RenderOptions options;
  options.placeholder_images = true;
  CHECK_NOTHROW(rasterize(slide, state, options));
}

TEST_CASE("rasterize is byte-deterministic") {
  SlideSpec slide = test_slide();
  RenderOptions options;
  options.placeholder_images = true;
  ElementRenderCache cache(slide, options);

  FrameState state;
  ElementVisual spinning = rest_pose();
  spinning.rotation_deg = 33.0;
  spinning.scale = 1.2;
  spinning.alpha = 0.7;
  state.by_element["Img1"] = spinning;
  state.by_element["Title"] = rest_pose();

  Image a = rasterize(slide, state, cache, options);
  Image b = rasterize(slide, state, cache, options);
  CHECK(a.rgba == b.rgba);
  CHECK(pixel_hash(a) == pixel_hash(b));
}

TEST_CASE("render_video writes the exact frame grid and a trailing manifest") {
  SlideSpec slide = test_slide();
  AnimationPlan plan;
  plan.slide_id = "s1";
  plan.steps = {make_step(1, Category::Entrance, "Title", "Fade", Direction::None, 1.5, 0.0, 1),
                make_step(2, Category::Entrance, "Img1", "Fade", Direction::None, 1.0, 0.5, 2)};
  // total 4.0 s -> 9 frames at 2 FPS

  fs::path dir = temp_dir("render_video");
  RenderOptions options;
  options.placeholder_images = true;
  options.jobs = 2;
  RenderManifest manifest = render_video(slide, plan, 2.0, dir.string(), options);

  CHECK(manifest.n_frames == 9);
  CHECK(manifest.total_s == doctest::Approx(4.0));
  int frame_files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".png") ++frame_files;
  }
  CHECK(frame_files == 9);
  CHECK(fs::exists(dir / "render.manifest"));
  CHECK(fs::exists(dir / "frame_00000.png"));
  CHECK(fs::exists(dir / "frame_00008.png"));

  // Two runs: byte-identical manifests and frames, independent of job count.
  fs::path dir2 = temp_dir("render_video_again");
  RenderOptions serial = options;
  serial.jobs = 1;
  render_video(slide, plan, 2.0, dir2.string(), serial);
  CHECK(read_bytes(dir / "render.manifest") == read_bytes(dir2 / "render.manifest"));
  CHECK(read_bytes(dir / "frame_00004.png") == read_bytes(dir2 / "frame_00004.png"));

  // First frame: the fade entrance is at progress 0, nothing has entered.
  Image background(slide.canvas_w, slide.canvas_h);
  std::string first = read_bytes(dir / "frame_00000.png");
  std::vector<std::uint8_t> encoded = encode_png(background);
  CHECK(first == std::string(encoded.begin(), encoded.end()));

  // Final frame: every element has entered, so it equals the static slide.
  Timeline timeline = compile(plan, slide);
  ElementRenderCache cache(slide, options);
  Image terminal =
      rasterize(slide, sample(timeline, slide, timeline.total_s), cache, options);
  std::vector<std::uint8_t> terminal_png = encode_png(terminal);
  CHECK(read_bytes(dir / "frame_00008.png") ==
        std::string(terminal_png.begin(), terminal_png.end()));

  FrameState all_rest;
  for (const auto& el : slide.elements) all_rest.by_element[el.name] = rest_pose();
  Image static_slide = rasterize(slide, all_rest, cache, options);
  CHECK(static_slide.rgba == terminal.rgba);
}

TEST_CASE("png encoding round-trips through the pixel hash deterministically") {
  Rng rng(99);
  Image img(63, 41);
  for (auto& byte : img.rgba) byte = static_cast<std::uint8_t>(rng.next_below(256));
  std::vector<std::uint8_t> a = encode_png(img);
  std::vector<std::uint8_t> b = encode_png(img);
  CHECK(a == b);
  CHECK(a.size() > 8);
  const std::uint8_t signature[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  for (int i = 0; i < 8; ++i) REQUIRE(a[static_cast<std::size_t>(i)] == signature[i]);
}

TEST_CASE("pam round trip preserves pixels") {
  fs::path dir = temp_dir("pam_roundtrip");
  Rng rng(7);
  Image img(17, 9);
  for (auto& byte : img.rgba) byte = static_cast<std::uint8_t>(rng.next_below(256));
  const fs::path path = dir / "img.pam";
  write_pam(img, path.string());
  Image back = read_image_asset(path.string());
  CHECK(back.w == img.w);
  CHECK(back.h == img.h);
  CHECK(back.rgba == img.rgba);
}
