#pragma once

#include <string>
#include <vector>

namespace slideanim {

enum class ElementKind { Title, Body, Image };

enum class Category { Entrance, Emphasis, Exit };

enum class Direction { None, Left, Right, Top, Bottom };

const char* to_string(ElementKind kind);
const char* to_string(Category category);
const char* to_string(Direction direction);

// Parse helpers return false and leave `out` untouched on unknown names.
bool parse_element_kind(const std::string& text, ElementKind& out);
bool parse_category(const std::string& text, Category& out);
bool parse_direction(const std::string& text, Direction& out);

// A positioned slide element. `content` holds text for title/body elements
// and an image-asset reference (path or pool key) for image elements.
struct Element {
  std::string name;
  ElementKind kind = ElementKind::Title;
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  std::string content;
};

struct SlideSpec {
  std::string slide_id;
  std::string language = "en";  // "en" or "zh"
  int canvas_w = 1280;
  int canvas_h = 720;
  std::vector<Element> elements;

  const Element* find_element(const std::string& name) const;
};

struct AnimationStep {
  int index = 1;  // 1-based position in the plan
  Category category = Category::Entrance;
  std::string element;
  std::string effect;  // effect family name, see catalog.hpp
  Direction direction = Direction::None;
  double duration_s = 1.0;
  double delay_s = 0.0;
  int repeat = 1;

  bool operator==(const AnimationStep&) const = default;
};

struct AnimationPlan {
  std::string slide_id;
  std::vector<AnimationStep> steps;
};

}  // namespace slideanim
