#include "slideanim/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "slideanim/catalog.hpp"

namespace slideanim {

using ordered_json = nlohmann::ordered_json;

std::string plan_to_json(const AnimationPlan& plan) {
  ordered_json doc;
  doc["slide"] = plan.slide_id;
  doc["steps"] = ordered_json::array();
  for (const auto& step : plan.steps) {
    ordered_json s;
    s["index"] = step.index;
    s["category"] = to_string(step.category);
    s["element"] = step.element;
    s["effect"] = step.effect;
    if (step.direction == Direction::None) s["direction"] = nullptr;
    else s["direction"] = to_string(step.direction);
    s["duration_s"] = step.duration_s;
    s["delay_s"] = step.delay_s;
    s["repeat"] = step.repeat;
    doc["steps"].push_back(std::move(s));
  }
  return doc.dump(2) + "\n";
}

AnimationPlan plan_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("plan document is not valid JSON: ") + e.what());
  }
  AnimationPlan plan;
  try {
    plan.slide_id = doc.at("slide").get<std::string>();
    for (const auto& s : doc.at("steps")) {
      AnimationStep step;
      step.index = s.at("index").get<int>();
      const std::string category = s.at("category").get<std::string>();
      if (!parse_category(category, step.category)) {
        throw std::runtime_error("unknown category '" + category + "'");
      }
      step.element = s.at("element").get<std::string>();
      step.effect = s.at("effect").get<std::string>();
      step.direction = Direction::None;
      if (s.contains("direction") && !s.at("direction").is_null()) {
        const std::string direction = s.at("direction").get<std::string>();
        if (!parse_direction(direction, step.direction)) {
          throw std::runtime_error("unknown direction '" + direction + "'");
        }
      }
      step.duration_s = s.at("duration_s").get<double>();
      step.delay_s = s.at("delay_s").get<double>();
      step.repeat = s.at("repeat").get<int>();
      plan.steps.push_back(std::move(step));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed plan document: ") + e.what());
  }
  return plan;
}

std::string slide_to_json(const SlideSpec& slide) {
  ordered_json doc;
  doc["slide_id"] = slide.slide_id;
  doc["language"] = slide.language;
  doc["canvas"] = ordered_json{{"width", slide.canvas_w}, {"height", slide.canvas_h}};
  doc["elements"] = ordered_json::array();
  for (const auto& el : slide.elements) {
    ordered_json e;
    e["name"] = el.name;
    e["kind"] = to_string(el.kind);
    e["x"] = el.x;
    e["y"] = el.y;
    e["w"] = el.w;
    e["h"] = el.h;
    e["content"] = el.content;
    doc["elements"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

SlideSpec slide_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("slide document is not valid JSON: ") + e.what());
  }
  SlideSpec slide;
  try {
    slide.slide_id = doc.at("slide_id").get<std::string>();
    slide.language = doc.value("language", std::string("en"));
    slide.canvas_w = doc.at("canvas").at("width").get<int>();
    slide.canvas_h = doc.at("canvas").at("height").get<int>();
    for (const auto& e : doc.at("elements")) {
      Element el;
      el.name = e.at("name").get<std::string>();
      const std::string kind = e.at("kind").get<std::string>();
      if (!parse_element_kind(kind, el.kind)) {
        throw std::runtime_error("unknown element kind '" + kind + "'");
      }
      el.x = e.at("x").get<int>();
      el.y = e.at("y").get<int>();
      el.w = e.at("w").get<int>();
      el.h = e.at("h").get<int>();
      el.content = e.value("content", std::string());
      slide.elements.push_back(std::move(el));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed slide document: ") + e.what());
  }
  return slide;
}

std::string units_to_json(const std::vector<ActionUnit>& units) {
  ordered_json doc = ordered_json::array();
  for (const auto& unit : units) {
    ordered_json u;
    u["category"] = to_string(unit.category);
    u["element"] = unit.element;
    u["effect"] = unit.effect.empty() ? ordered_json(nullptr) : ordered_json(unit.effect);
    u["direction"] =
        unit.direction ? ordered_json(to_string(*unit.direction)) : ordered_json(nullptr);
    u["duration_s"] = unit.duration_s ? ordered_json(*unit.duration_s) : ordered_json(nullptr);
    u["delay_s"] = unit.delay_s ? ordered_json(*unit.delay_s) : ordered_json(nullptr);
    u["repeat"] = unit.repeat ? ordered_json(*unit.repeat) : ordered_json(nullptr);
    u["span"] = ordered_json::array({unit.span_begin, unit.span_end});
    doc.push_back(std::move(u));
  }
  return doc.dump(2) + "\n";
}

std::string report_to_json(const ValidationReport& report) {
  ordered_json doc;
  doc["ok"] = report.ok();
  doc["errors"] = ordered_json::array();
  doc["warnings"] = ordered_json::array();
  for (const auto& v : report.items) {
    ordered_json item;
    item["code"] = v.code;
    item["message"] = v.message;
    item["step"] = v.step_index;
    if (v.severity == Violation::Severity::Error) doc["errors"].push_back(std::move(item));
    else doc["warnings"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

AnimationPlan load_plan(const std::string& path) {
  try {
    return plan_from_json(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SlideSpec load_slide(const std::string& path) {
  try {
    return slide_from_json(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace slideanim
