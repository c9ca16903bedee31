#include "slideanim/effects.hpp"

#include <cmath>
#include <stdexcept>

#include "slideanim/catalog.hpp"

namespace slideanim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void fly_offset(Direction dir, const Element& el, int canvas_w, int canvas_h, double& dx,
                double& dy) {
  dx = 0.0;
  dy = 0.0;
  switch (dir) {
    case Direction::Left: dx = -static_cast<double>(el.x + el.w); break;
    case Direction::Right: dx = static_cast<double>(canvas_w - el.x); break;
    case Direction::Top: dy = -static_cast<double>(el.y + el.h); break;
    case Direction::Bottom: dy = static_cast<double>(canvas_h - el.y); break;
    case Direction::None: break;
  }
}

// Entrance-direction state for the reveal-mask and movement families.
// Exits reuse this at progress 1 - p.
ElementVisual entrance_state(const EffectKind& kind, Direction dir, double p, const Element& el,
                             int canvas_w, int canvas_h) {
  ElementVisual v = rest_pose();
  if (kind.family == "Fade") {
    v.alpha = p;
  } else if (kind.family == "FlyFrom" || kind.family == "FlyTo") {
    double dx = 0.0, dy = 0.0;
    fly_offset(dir, el, canvas_w, canvas_h, dx, dy);
    v.dx = (1.0 - p) * dx;
    v.dy = (1.0 - p) * dy;
  } else if (kind.family == "Wipe") {
    v.mask = MaskState{MaskKind::Wipe, dir, p};
  } else if (kind.family == "Box") {
    v.mask = MaskState{MaskKind::Box, Direction::None, p};
  } else if (kind.family == "Blinds") {
    v.mask = MaskState{MaskKind::Blinds, Direction::None, p};
  } else if (kind.family == "Checkerboard") {
    v.mask = MaskState{MaskKind::Checkerboard, Direction::None, p};
  } else if (kind.family == "Circle") {
    v.mask = MaskState{MaskKind::Circle, Direction::None, p};
  } else if (kind.family == "Pinwheel") {
    v.mask = MaskState{MaskKind::Pinwheel, Direction::None, p};
  } else {
    throw std::invalid_argument("effect '" + kind.family + "' has no entrance semantics");
  }
  return v;
}

ElementVisual emphasis_state(const EffectKind& kind, double p) {
  ElementVisual v = rest_pose();
  if (kind.family == "Spin") {
    v.rotation_deg = 360.0 * p;
  } else if (kind.family == "Teeter") {
    v.rotation_deg = 5.0 * std::sin(4.0 * kPi * p);
  } else if (kind.family == "FlashBulb") {
    v.brightness = 1.0 + 0.75 * std::sin(kPi * p);
  } else if (kind.family == "GrowShrink") {
    v.scale = 1.0 + 0.5 * std::sin(kPi * p);
  } else if (kind.family == "Pulse") {
    v.scale = 1.0 + 0.1 * std::sin(kPi * p);
  } else if (kind.family == "Wave") {
    v.dy = -12.0 * std::sin(2.0 * kPi * p);
  } else if (kind.family == "Blink") {
    double cycle = 2.0 * p - std::floor(2.0 * p);
    v.alpha = (p >= 1.0 || cycle < 0.5) ? 1.0 : 0.0;
  } else if (kind.family == "Darken") {
    v.brightness = 1.0 - 0.4 * std::sin(kPi * p);
  } else if (kind.family == "Lighten") {
    v.brightness = 1.0 + 0.4 * std::sin(kPi * p);
  } else if (kind.family == "Transparency") {
    v.alpha = 1.0 - 0.6 * std::sin(kPi * p);
  } else {
    throw std::invalid_argument("effect '" + kind.family + "' has no emphasis semantics");
  }
  return v;
}

}  // namespace

ElementVisual rest_pose() {
  ElementVisual v;
  v.visible = true;
  return v;
}

ElementVisual effect_transform(const std::string& family, Category category, Direction direction,
                               double p, const Element& element, int canvas_w, int canvas_h) {
  const EffectKind* kind = find_effect(family);
  if (kind == nullptr) {
    throw std::invalid_argument("unknown effect family '" + family + "'");
  }
  if (!kind->supports(category)) {
    throw std::invalid_argument("effect '" + family + "' does not support category " +
                                std::string(to_string(category)));
  }
  if (kind->directional && direction == Direction::None) {
    throw std::invalid_argument("effect '" + family + "' requires a direction");
  }
  if (!kind->directional && direction != Direction::None) {
    throw std::invalid_argument("effect '" + family + "' does not take a direction");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("progress must lie in [0, 1]");
  }

  switch (category) {
    case Category::Entrance:
      return entrance_state(*kind, direction, p, element, canvas_w, canvas_h);
    case Category::Exit:
      return entrance_state(*kind, direction, 1.0 - p, element, canvas_w, canvas_h);
    case Category::Emphasis:
      return emphasis_state(*kind, p);
  }
  throw std::logic_error("unreachable");
}

bool mask_reveals(const MaskState& mask, int px, int py, int w, int h) {
  if (mask.kind == MaskKind::None) return true;
  const double p = mask.progress;
  // Contract points: nothing revealed at p = 0, everything at p = 1.
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;

  const double u = (px + 0.5) / w;  // pixel center, in (0, 1)
  const double v = (py + 0.5) / h;

  switch (mask.kind) {
    case MaskKind::None:
      return true;
    case MaskKind::Wipe:
      switch (mask.direction) {
        case Direction::Left: return u <= p;
        case Direction::Right: return u >= 1.0 - p;
        case Direction::Top: return v <= p;
        case Direction::Bottom: return v >= 1.0 - p;
        case Direction::None: return v >= 1.0 - p;  // bottom-up default
      }
      return false;
    case MaskKind::Box: {
      double d = std::max(std::fabs(u - 0.5), std::fabs(v - 0.5)) * 2.0;
      return d <= p;
    }
    case MaskKind::Blinds: {
      double stripe_pos = v * mask.stripes;
      return stripe_pos - std::floor(stripe_pos) <= p;
    }
    case MaskKind::Checkerboard: {
      int col = std::min(static_cast<int>(u * mask.cols), mask.cols - 1);
      int row = std::min(static_cast<int>(v * mask.rows), mask.rows - 1);
      double threshold = (col + (row % 2) * 0.5) / mask.cols;
      return p >= threshold && p > 0.0;
    }
    case MaskKind::Circle: {
      // Ellipse sized so that p = 1 covers the rect corners.
      double nx = (u - 0.5) / (p / std::sqrt(2.0));
      double ny = (v - 0.5) / (p / std::sqrt(2.0));
      return nx * nx + ny * ny <= 1.0;
    }
    case MaskKind::Pinwheel: {
      double angle = std::atan2(v - 0.5, u - 0.5);  // (-pi, pi]
      if (angle < 0.0) angle += 2.0 * 3.14159265358979323846;
      const double swept = 3.14159265358979323846 * p;  // per blade
      for (int blade = 0; blade < mask.blades; ++blade) {
        double anchor = blade * (2.0 * 3.14159265358979323846 / mask.blades);
        double rel = angle - anchor;
        if (rel < 0.0) rel += 2.0 * 3.14159265358979323846;
        if (rel <= swept) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace slideanim
