#pragma once

#include "slideanim/types.hpp"

namespace slideanim {

enum class MaskKind { None, Wipe, Box, Blinds, Checkerboard, Circle, Pinwheel };

struct MaskState {
  MaskKind kind = MaskKind::None;
  Direction direction = Direction::None;  // wipe only
  double progress = 1.0;                  // revealed fraction in [0, 1]
  int stripes = 6;                        // blinds
  int rows = 6;                           // checkerboard
  int cols = 8;                           // checkerboard
  int blades = 2;                         // pinwheel
};

// Per-element visual state at one sample time. Defaults are the rest pose.
struct ElementVisual {
  bool visible = false;
  double alpha = 1.0;
  double dx = 0.0;
  double dy = 0.0;
  double scale = 1.0;
  double rotation_deg = 0.0;
  MaskState mask;
  double brightness = 1.0;
};

ElementVisual rest_pose();

// Visual state of one effect at progress p in [0, 1]. Entrance plays
// forward; exits mirror their entrance in p. Offsets for fly effects depend
// on the element rect and canvas size. Throws std::invalid_argument for an
// unknown family or a missing/superfluous direction.
ElementVisual effect_transform(const std::string& family, Category category, Direction direction,
                               double p, const Element& element, int canvas_w, int canvas_h);

// True when the mask leaves the element-local pixel (px, py) visible.
// Coordinates are pixel indices inside a w-by-h element rect.
bool mask_reveals(const MaskState& mask, int px, int py, int w, int h);

}  // namespace slideanim
