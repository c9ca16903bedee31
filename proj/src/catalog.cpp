#include "slideanim/catalog.hpp"

#include <array>
#include <stdexcept>

namespace slideanim {

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Title: return "title";
    case ElementKind::Body: return "body";
    case ElementKind::Image: return "image";
  }
  return "?";
}

const char* to_string(Category category) {
  switch (category) {
    case Category::Entrance: return "entrance";
    case Category::Emphasis: return "emphasis";
    case Category::Exit: return "exit";
  }
  return "?";
}

const char* to_string(Direction direction) {
  switch (direction) {
    case Direction::None: return "none";
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Top: return "top";
    case Direction::Bottom: return "bottom";
  }
  return "?";
}

bool parse_element_kind(const std::string& text, ElementKind& out) {
  if (text == "title") { out = ElementKind::Title; return true; }
  if (text == "body") { out = ElementKind::Body; return true; }
  if (text == "image") { out = ElementKind::Image; return true; }
  return false;
}

bool parse_category(const std::string& text, Category& out) {
  if (text == "entrance") { out = Category::Entrance; return true; }
  if (text == "emphasis") { out = Category::Emphasis; return true; }
  if (text == "exit") { out = Category::Exit; return true; }
  return false;
}

bool parse_direction(const std::string& text, Direction& out) {
  if (text == "none" || text.empty()) { out = Direction::None; return true; }
  if (text == "left") { out = Direction::Left; return true; }
  if (text == "right") { out = Direction::Right; return true; }
  if (text == "top") { out = Direction::Top; return true; }
  if (text == "bottom") { out = Direction::Bottom; return true; }
  return false;
}

const Element* SlideSpec::find_element(const std::string& name) const {
  for (const auto& e : elements) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

std::vector<EffectKind> build_catalog() {
  std::vector<EffectKind> cat;
  auto add = [&cat](std::string family, std::uint8_t mask, bool directional,
                    std::string paired = "") {
    cat.push_back(EffectKind{std::move(family), mask, directional, std::move(paired)});
  };

  // Entrance/exit families. FlyFrom and FlyTo are a registered pair; the
  // remaining families support both categories under one name.
  add("Fade", kMaskEntrance | kMaskExit, false);
  add("FlyFrom", kMaskEntrance, true, "FlyTo");
  add("FlyTo", kMaskExit, true, "FlyFrom");
  add("Wipe", kMaskEntrance | kMaskExit, true);
  add("Box", kMaskEntrance | kMaskExit, false);
  add("Blinds", kMaskEntrance | kMaskExit, false);
  add("Checkerboard", kMaskEntrance | kMaskExit, false);
  add("Circle", kMaskEntrance | kMaskExit, false);
  add("Pinwheel", kMaskEntrance | kMaskExit, false);

  // Emphasis families (exactly ten).
  add("Spin", kMaskEmphasis, false);
  add("Teeter", kMaskEmphasis, false);
  add("FlashBulb", kMaskEmphasis, false);
  add("GrowShrink", kMaskEmphasis, false);
  add("Pulse", kMaskEmphasis, false);
  add("Wave", kMaskEmphasis, false);
  add("Blink", kMaskEmphasis, false);
  add("Darken", kMaskEmphasis, false);
  add("Lighten", kMaskEmphasis, false);
  add("Transparency", kMaskEmphasis, false);

  return cat;
}

constexpr std::array<Direction, 4> kDirections = {Direction::Left, Direction::Right,
                                                  Direction::Top, Direction::Bottom};

std::string capitalized(Direction d) {
  switch (d) {
    case Direction::Left: return "Left";
    case Direction::Right: return "Right";
    case Direction::Top: return "Top";
    case Direction::Bottom: return "Bottom";
    case Direction::None: break;
  }
  return "";
}

}  // namespace

const std::vector<EffectKind>& effect_catalog() {
  static const std::vector<EffectKind> catalog = build_catalog();
  return catalog;
}

const EffectKind* find_effect(std::string_view family) {
  for (const auto& kind : effect_catalog()) {
    if (kind.family == family) return &kind;
  }
  return nullptr;
}

int entrance_exit_pair_count() {
  int pairs = 0;
  for (const auto& kind : effect_catalog()) {
    if (!kind.supports(Category::Entrance)) continue;
    bool has_exit = kind.supports(Category::Exit) ||
                    (!kind.paired_family.empty() &&
                     find_effect(kind.paired_family) != nullptr &&
                     find_effect(kind.paired_family)->supports(Category::Exit));
    if (!has_exit) continue;
    pairs += kind.directional ? 4 : 1;
  }
  return pairs;
}

int emphasis_family_count() {
  int n = 0;
  for (const auto& kind : effect_catalog()) {
    if (kind.supports(Category::Emphasis)) ++n;
  }
  return n;
}

std::string variant_name(const std::string& family, Direction dir) {
  if (dir == Direction::None) return family;
  return family + capitalized(dir);
}

std::vector<std::string> category_variants(Category c) {
  std::vector<std::string> out;
  for (const auto& kind : effect_catalog()) {
    if (!kind.supports(c)) continue;
    if (kind.directional) {
      for (Direction d : kDirections) out.push_back(variant_name(kind.family, d));
    } else {
      out.push_back(kind.family);
    }
  }
  return out;
}

bool parse_variant(const std::string& variant, std::string& family, Direction& dir) {
  if (const EffectKind* kind = find_effect(variant)) {
    if (kind->directional) return false;  // bare directional family is not a variant
    family = variant;
    dir = Direction::None;
    return true;
  }
  for (Direction d : kDirections) {
    const std::string suffix = capitalized(d);
    if (variant.size() > suffix.size() &&
        variant.compare(variant.size() - suffix.size(), suffix.size(), suffix) == 0) {
      std::string stem = variant.substr(0, variant.size() - suffix.size());
      const EffectKind* kind = find_effect(stem);
      if (kind != nullptr && kind->directional) {
        family = stem;
        dir = d;
        return true;
      }
    }
  }
  return false;
}

}  // namespace slideanim
