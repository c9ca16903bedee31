#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "slideanim/image.hpp"
#include "slideanim/timeline.hpp"
#include "slideanim/types.hpp"

namespace slideanim {

struct RenderOptions {
  bool placeholder_text = false;    // hatched blocks instead of glyphs
  bool placeholder_images = false;  // never touch the filesystem for assets
  std::array<std::uint8_t, 4> background = {255, 255, 255, 255};
  int jobs = 0;  // frame-render workers; 0 = hardware concurrency
};

// Base bitmaps are static per video; build them once and reuse per frame.
class ElementRenderCache {
 public:
  ElementRenderCache(const SlideSpec& slide, const RenderOptions& options);
  const Image& base(const std::string& element_name) const;

 private:
  std::map<std::string, Image> bitmaps_;
};

// 5x7 glyph rows (bit 4 = leftmost column); nullptr outside printable ASCII.
const std::uint8_t* glyph5x7(char c);

// Deterministic procedural stand-in for an image asset, keyed by the
// element's content string.
Image placeholder_pattern(const std::string& key, int w, int h);

// Draws visible elements back-to-front in slide order, applying alpha,
// offset, scale and rotation about the element center, brightness, and the
// reveal mask. Byte-deterministic for identical inputs.
Image rasterize(const SlideSpec& slide, const FrameState& state, const ElementRenderCache& cache,
                const RenderOptions& options);
Image rasterize(const SlideSpec& slide, const FrameState& state, const RenderOptions& options);

struct RenderManifest {
  double fps = 0.0;
  double total_s = 0.0;
  int n_frames = 0;
  std::vector<std::string> frame_hashes;

  std::string to_text() const;
};

// Writes frame_00000.png ... plus a `render.manifest` key-value document;
// the manifest is written last and marks the video complete.
RenderManifest render_video(const SlideSpec& slide, const AnimationPlan& plan, double fps,
                            const std::string& out_dir, const RenderOptions& options);

}  // namespace slideanim
