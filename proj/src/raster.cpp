#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slideanim/render.hpp"

namespace slideanim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Rgb {
  std::uint8_t r, g, b;
};

Rgb hsv_to_rgb(double hue_deg, double sat, double val) {
  double c = val * sat;
  double hp = hue_deg / 60.0;
  double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  double m = val - c;
  auto to8 = [m](double ch) { return static_cast<std::uint8_t>((ch + m) * 255.0 + 0.5); };
  return Rgb{to8(r), to8(g), to8(b)};
}

void fill_rect(Image& img, int x0, int y0, int x1, int y1, Rgb color, std::uint8_t alpha = 255) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.w);
  y1 = std::min(y1, img.h);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      std::uint8_t* px = img.pixel(x, y);
      px[0] = color.r;
      px[1] = color.g;
      px[2] = color.b;
      px[3] = alpha;
    }
  }
}

// Decodes one UTF-8 codepoint; advances `i`. Invalid bytes count as one
// codepoint each so decoding always terminates.
std::uint32_t next_codepoint(const std::string& s, std::size_t& i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) { ++i; return c; }
  int extra = (c >= 0xF0) ? 3 : (c >= 0xE0) ? 2 : 1;
  std::uint32_t cp = c & (0x3F >> extra);
  std::size_t j = i + 1;
  for (; extra > 0 && j < s.size(); --extra, ++j) {
    cp = (cp << 6) | (static_cast<unsigned char>(s[j]) & 0x3F);
  }
  i = j;
  return cp;
}

void draw_glyph(Image& img, int x, int y, std::uint32_t codepoint, int scale, Rgb color,
                bool placeholder) {
  const std::uint8_t* rows =
      (!placeholder && codepoint < 127) ? glyph5x7(static_cast<char>(codepoint)) : nullptr;
  if (codepoint == ' ') return;
  for (int gy = 0; gy < 7; ++gy) {
    for (int gx = 0; gx < 5; ++gx) {
      bool on;
      if (rows != nullptr) {
        on = (rows[gy] >> (4 - gx)) & 1;
      } else {
        // Hatched block for placeholder mode and non-ASCII codepoints.
        on = ((gx + gy) % 2) == 0;
      }
      if (!on) continue;
      fill_rect(img, x + gx * scale, y + gy * scale, x + (gx + 1) * scale, y + (gy + 1) * scale,
                color);
    }
  }
}

void draw_text_block(Image& img, const std::string& text, int scale, Rgb color, int pad,
                     bool placeholder) {
  const int advance = 6 * scale;
  const int line_height = 9 * scale;
  int x = pad;
  int y = pad;

  // Word wrap on spaces; overlong words break mid-word.
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      x += advance;
      ++i;
      if (x + advance > img.w - pad) {
        x = pad;
        y += line_height;
      }
      continue;
    }
    // Measure the next word in codepoints.
    std::size_t word_end = text.find(' ', i);
    if (word_end == std::string::npos) word_end = text.size();
    int word_cols = 0;
    for (std::size_t j = i; j < word_end;) {
      next_codepoint(text, j);
      ++word_cols;
    }
    if (x > pad && x + word_cols * advance > img.w - pad) {
      x = pad;
      y += line_height;
    }
    while (i < word_end) {
      if (y + 7 * scale > img.h - pad) return;  // block is full
      std::uint32_t cp = next_codepoint(text, i);
      if (x + advance > img.w - pad) {
        x = pad;
        y += line_height;
        if (y + 7 * scale > img.h - pad) return;
      }
      draw_glyph(img, x, y, cp, scale, color, placeholder);
      x += advance;
    }
  }
}

Image render_text_element(const Element& el, const RenderOptions& options) {
  const bool is_title = el.kind == ElementKind::Title;
  Image img(el.w, el.h, 0, 0, 0, 0);
  const Rgb panel = is_title ? Rgb{232, 238, 247} : Rgb{245, 246, 248};
  const Rgb ink = is_title ? Rgb{31, 41, 55} : Rgb{55, 65, 81};
  fill_rect(img, 0, 0, el.w, el.h, panel);
  // Accent bar along the left edge of the panel.
  fill_rect(img, 0, 0, std::min(4, el.w), el.h, Rgb{70, 110, 180});
  const int scale = is_title ? 3 : 2;
  draw_text_block(img, el.content, scale, ink, 10, options.placeholder_text);
  return img;
}

}  // namespace

Image placeholder_pattern(const std::string& key, int w, int h) {
  const std::uint64_t seed = fnv1a64(key);
  const double hue = static_cast<double>(seed % 360u);
  const Rgb bg = hsv_to_rgb(hue, 0.45, 0.85);
  const Rgb stripe = hsv_to_rgb(std::fmod(hue + 40.0, 360.0), 0.55, 0.70);
  const Rgb border = hsv_to_rgb(hue, 0.60, 0.45);
  const int period = 12 + static_cast<int>((seed >> 8) % 9u);

  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb& c = (((x + y) / period) % 2 == 0) ? bg : stripe;
      std::uint8_t* px = img.pixel(x, y);
      px[0] = c.r;
      px[1] = c.g;
      px[2] = c.b;
      px[3] = 255;
    }
  }
  const int bw = std::max(2, std::min(w, h) / 40);
  fill_rect(img, 0, 0, w, bw, border);
  fill_rect(img, 0, h - bw, w, h, border);
  fill_rect(img, 0, 0, bw, h, border);
  fill_rect(img, w - bw, 0, w, h, border);
  return img;
}

ElementRenderCache::ElementRenderCache(const SlideSpec& slide, const RenderOptions& options) {
  for (const auto& el : slide.elements) {
    if (el.kind == ElementKind::Image) {
      const bool procedural =
          options.placeholder_images || el.content.rfind("pool://", 0) == 0 || el.content.empty();
      bitmaps_.emplace(el.name, procedural ? placeholder_pattern(el.content, el.w, el.h)
                                           : [&] {
                                               Image asset = read_image_asset(el.content);
                                               // Nearest-neighbor scale to the element rect.
                                               Image scaled(el.w, el.h);
                                               for (int y = 0; y < el.h; ++y) {
                                                 int sy = static_cast<int>(
                                                     (y + 0.5) * asset.h / el.h);
                                                 sy = std::min(sy, asset.h - 1);
                                                 for (int x = 0; x < el.w; ++x) {
                                                   int sx = static_cast<int>(
                                                       (x + 0.5) * asset.w / el.w);
                                                   sx = std::min(sx, asset.w - 1);
                                                   const std::uint8_t* s = asset.pixel(sx, sy);
                                                   std::uint8_t* d = scaled.pixel(x, y);
                                                   d[0] = s[0];
                                                   d[1] = s[1];
                                                   d[2] = s[2];
                                                   d[3] = s[3];
                                                 }
                                               }
                                               return scaled;
                                             }());
    } else {
      bitmaps_.emplace(el.name, render_text_element(el, options));
    }
  }
}

const Image& ElementRenderCache::base(const std::string& element_name) const {
  auto it = bitmaps_.find(element_name);
  if (it == bitmaps_.end()) {
    throw std::out_of_range("no base bitmap for element '" + element_name + "'");
  }
  return it->second;
}

namespace {

inline void blend_pixel(std::uint8_t* dst, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                        std::uint8_t a) {
  if (a == 255) {
    dst[0] = r;
    dst[1] = g;
    dst[2] = b;
    dst[3] = 255;
    return;
  }
  if (a == 0) return;
  const unsigned ia = 255u - a;
  dst[0] = static_cast<std::uint8_t>((r * a + dst[0] * ia + 127u) / 255u);
  dst[1] = static_cast<std::uint8_t>((g * a + dst[1] * ia + 127u) / 255u);
  dst[2] = static_cast<std::uint8_t>((b * a + dst[2] * ia + 127u) / 255u);
  dst[3] = 255;
}

inline std::uint8_t apply_brightness(std::uint8_t c, double brightness) {
  double v = c * brightness + 0.5;
  return v >= 255.0 ? 255 : static_cast<std::uint8_t>(v);
}

void composite_element(Image& canvas, const Element& el, const Image& base,
                       const ElementVisual& visual) {
  const bool rest_transform = visual.alpha >= 1.0 && visual.dx == 0.0 && visual.dy == 0.0 &&
                              visual.scale == 1.0 && visual.rotation_deg == 0.0 &&
                              visual.mask.kind == MaskKind::None && visual.brightness == 1.0;
  if (rest_transform) {
    const int x0 = std::max(el.x, 0), y0 = std::max(el.y, 0);
    const int x1 = std::min(el.x + el.w, canvas.w), y1 = std::min(el.y + el.h, canvas.h);
    for (int y = y0; y < y1; ++y) {
      const std::uint8_t* src = base.pixel(x0 - el.x, y - el.y);
      std::uint8_t* dst = canvas.pixel(x0, y);
      for (int x = x0; x < x1; ++x, src += 4, dst += 4) {
        blend_pixel(dst, src[0], src[1], src[2], src[3]);
      }
    }
    return;
  }

  const double cx = el.x + el.w / 2.0 + visual.dx;
  const double cy = el.y + el.h / 2.0 + visual.dy;
  const double theta = visual.rotation_deg * kPi / 180.0;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double radius = 0.5 * visual.scale * std::sqrt(double(el.w) * el.w + double(el.h) * el.h);

  int x0 = std::max(static_cast<int>(std::floor(cx - radius)), 0);
  int y0 = std::max(static_cast<int>(std::floor(cy - radius)), 0);
  int x1 = std::min(static_cast<int>(std::ceil(cx + radius)) + 1, canvas.w);
  int y1 = std::min(static_cast<int>(std::ceil(cy + radius)) + 1, canvas.h);
  if (x0 >= x1 || y0 >= y1) return;  // fully off-canvas is fine

  const std::uint8_t eff_alpha =
      static_cast<std::uint8_t>(std::clamp(visual.alpha, 0.0, 1.0) * 255.0 + 0.5);
  if (eff_alpha == 0) return;
  const bool brightness_active = visual.brightness != 1.0;

  for (int y = y0; y < y1; ++y) {
    std::uint8_t* dst = canvas.pixel(x0, y);
    for (int x = x0; x < x1; ++x, dst += 4) {
      const double vx = x + 0.5 - cx;
      const double vy = y + 0.5 - cy;
      const double lx = (vx * cos_t + vy * sin_t) / visual.scale + el.w / 2.0;
      const double ly = (-vx * sin_t + vy * cos_t) / visual.scale + el.h / 2.0;
      const int ix = static_cast<int>(std::floor(lx));
      const int iy = static_cast<int>(std::floor(ly));
      if (ix < 0 || iy < 0 || ix >= el.w || iy >= el.h) continue;
      if (!mask_reveals(visual.mask, ix, iy, el.w, el.h)) continue;
      const std::uint8_t* src = base.pixel(ix, iy);
      std::uint8_t a = src[3];
      if (eff_alpha != 255) a = static_cast<std::uint8_t>((a * eff_alpha + 127u) / 255u);
      if (a == 0) continue;
      std::uint8_t r = src[0], g = src[1], b = src[2];
      if (brightness_active) {
        r = apply_brightness(r, visual.brightness);
        g = apply_brightness(g, visual.brightness);
        b = apply_brightness(b, visual.brightness);
      }
      blend_pixel(dst, r, g, b, a);
    }
  }
}

}  // namespace

Image rasterize(const SlideSpec& slide, const FrameState& state, const ElementRenderCache& cache,
                const RenderOptions& options) {
  Image canvas(slide.canvas_w, slide.canvas_h, options.background[0], options.background[1],
               options.background[2], options.background[3]);
  for (const auto& el : slide.elements) {
    auto it = state.by_element.find(el.name);
    if (it == state.by_element.end() || !it->second.visible) continue;
    composite_element(canvas, el, cache.base(el.name), it->second);
  }
  return canvas;
}

Image rasterize(const SlideSpec& slide, const FrameState& state, const RenderOptions& options) {
  ElementRenderCache cache(slide, options);
  return rasterize(slide, state, cache, options);
}

}  // namespace slideanim
