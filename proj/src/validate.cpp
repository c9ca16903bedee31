#include "slideanim/validate.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "slideanim/catalog.hpp"

namespace slideanim {

namespace {

constexpr double kMinDuration = 0.5;
constexpr double kMaxDuration = 3.0;
constexpr double kMaxDelay = 4.0;
constexpr int kMinSteps = 4;
constexpr int kMaxSteps = 15;

void add(ValidationReport& report, Violation::Severity sev, std::string code,
         std::string message, int step_index = 0) {
  report.items.push_back(Violation{sev, std::move(code), std::move(message), step_index});
}

}  // namespace

bool ValidationReport::ok() const { return error_count() == 0; }

int ValidationReport::error_count() const {
  int n = 0;
  for (const auto& v : items) {
    if (v.severity == Violation::Severity::Error) ++n;
  }
  return n;
}

int ValidationReport::warning_count() const {
  return static_cast<int>(items.size()) - error_count();
}

ValidationReport validate_slide(const SlideSpec& slide) {
  ValidationReport report;
  using Sev = Violation::Severity;

  if (slide.canvas_w <= 0 || slide.canvas_h <= 0) {
    add(report, Sev::Error, "canvas", "canvas dimensions must be positive");
    return report;
  }

  int titles = 0, bodies = 0, images = 0;
  std::set<std::string> names;
  for (const auto& e : slide.elements) {
    if (!names.insert(e.name).second) {
      add(report, Sev::Error, "duplicate_name", "element name '" + e.name + "' is not unique");
    }
    if (e.w <= 0 || e.h <= 0) {
      add(report, Sev::Error, "size", "element '" + e.name + "' has non-positive size");
    }
    if (e.x < 0 || e.y < 0 || e.x + e.w > slide.canvas_w || e.y + e.h > slide.canvas_h) {
      add(report, Sev::Error, "bounds", "element '" + e.name + "' lies outside the canvas");
    }
    switch (e.kind) {
      case ElementKind::Title: ++titles; break;
      case ElementKind::Body: ++bodies; break;
      case ElementKind::Image: ++images; break;
    }
  }
  if (titles != 1) {
    add(report, Sev::Error, "composition", "slide must contain exactly one title");
  }
  if (bodies > 1) {
    add(report, Sev::Error, "composition", "slide may contain at most one body");
  }
  if (images < 1 || images > 4) {
    add(report, Sev::Error, "composition", "slide must contain between 1 and 4 images");
  }
  return report;
}

ValidationReport validate_plan(const AnimationPlan& plan, const SlideSpec& slide) {
  if (plan.slide_id != slide.slide_id) {
    throw std::invalid_argument("plan references slide '" + plan.slide_id +
                                "' but was paired with slide '" + slide.slide_id + "'");
  }

  ValidationReport report;
  using Sev = Violation::Severity;

  const int k = static_cast<int>(plan.steps.size());
  if (k < kMinSteps || k > kMaxSteps) {
    add(report, Sev::Warning, "step_count",
        "plan has " + std::to_string(k) + " steps, outside the synthesized range [4, 15]");
  }

  // Per-element lifecycle: entrance (emphasis)* (exit)?, repeated.
  std::map<std::string, bool> visible;  // only elements seen in steps

  int expected_index = 1;
  for (const auto& step : plan.steps) {
    const int si = step.index;
    if (step.index != expected_index) {
      add(report, Sev::Error, "index_sequence",
          "step index " + std::to_string(step.index) + " where " +
              std::to_string(expected_index) + " was expected", si);
    }
    ++expected_index;

    const Element* element = slide.find_element(step.element);
    if (element == nullptr) {
      add(report, Sev::Error, "unknown_element",
          "step references element '" + step.element + "' absent from the slide", si);
    }

    const EffectKind* effect = find_effect(step.effect);
    if (effect == nullptr) {
      add(report, Sev::Error, "unknown_effect",
          "effect family '" + step.effect + "' is not in the catalog", si);
    } else {
      if (!effect->supports(step.category)) {
        add(report, Sev::Error, "category_mismatch",
            "effect '" + step.effect + "' does not support category " +
                to_string(step.category), si);
      }
      if (effect->directional && step.direction == Direction::None) {
        add(report, Sev::Error, "direction_missing",
            "effect '" + step.effect + "' requires a direction", si);
      }
      if (!effect->directional && step.direction != Direction::None) {
        add(report, Sev::Error, "direction_superfluous",
            "effect '" + step.effect + "' does not take a direction", si);
      }
    }

    if (!(step.duration_s > 0.0)) {
      add(report, Sev::Error, "duration", "duration must be positive", si);
    } else if (step.duration_s < kMinDuration || step.duration_s > kMaxDuration) {
      add(report, Sev::Warning, "duration_range",
          "duration outside the synthesized range [0.5, 3.0] s", si);
    }
    if (step.delay_s < 0.0) {
      add(report, Sev::Error, "delay", "delay must be non-negative", si);
    } else if (step.delay_s > kMaxDelay) {
      add(report, Sev::Warning, "delay_range",
          "delay outside the synthesized range [0, 4.0] s", si);
    }
    if (step.repeat < 1) {
      add(report, Sev::Error, "repeat", "repeat must be at least 1", si);
    }

    auto it = visible.find(step.element);
    const bool entered_before = it != visible.end();
    const bool is_visible = entered_before && it->second;
    switch (step.category) {
      case Category::Entrance:
        if (is_visible) {
          add(report, Sev::Error, "lifecycle",
              "second entrance for element '" + step.element + "' without an intervening exit",
              si);
        }
        visible[step.element] = true;
        break;
      case Category::Emphasis:
        if (!is_visible) {
          add(report, Sev::Error, "lifecycle",
              "emphasis on element '" + step.element + "' while it is hidden", si);
        }
        break;
      case Category::Exit:
        if (!is_visible) {
          add(report, Sev::Error, "lifecycle",
              "exit of element '" + step.element + "' while it is hidden", si);
        }
        visible[step.element] = false;
        break;
    }
  }

  return report;
}

double plan_duration(const AnimationPlan& plan) {
  double end = 0.0;
  for (const auto& step : plan.steps) {
    const double start = end + step.delay_s;
    end = start + step.duration_s * static_cast<double>(step.repeat);
  }
  return end;
}

}  // namespace slideanim
