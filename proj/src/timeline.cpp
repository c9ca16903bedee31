#include "slideanim/timeline.hpp"

#include <cmath>
#include <stdexcept>

#include "slideanim/validate.hpp"

namespace slideanim {

const ElementVisual& FrameState::at(const std::string& name) const {
  auto it = by_element.find(name);
  if (it == by_element.end()) {
    throw std::out_of_range("no element '" + name + "' in frame state");
  }
  return it->second;
}

Timeline compile(const AnimationPlan& plan, const SlideSpec& slide) {
  ValidationReport report = validate_plan(plan, slide);
  if (!report.ok()) {
    std::string what = "plan failed validation:";
    for (const auto& v : report.items) {
      if (v.severity == Violation::Severity::Error) what += " [" + v.code + "] " + v.message + ";";
    }
    throw PlanValidationError(what);
  }

  Timeline timeline;
  timeline.slide_id = plan.slide_id;
  double end = 0.0;
  for (const auto& step : plan.steps) {
    const double start = end + step.delay_s;
    end = start + step.duration_s * static_cast<double>(step.repeat);
    timeline.entries.push_back(TimelineEntry{step, start, end});
  }
  timeline.total_s = end;
  return timeline;
}

FrameState sample(const Timeline& timeline, const SlideSpec& slide, double t) {
  if (t < 0.0 || t > timeline.total_s + 1e-9) {
    throw std::out_of_range("sample time outside [0, total_s]");
  }

  FrameState state;
  for (const auto& element : slide.elements) {
    ElementVisual visual;  // hidden until an entrance touches the element
    visual.visible = false;

    for (const auto& entry : timeline.entries) {
      if (entry.step.element != element.name) continue;

      if (t >= entry.end_s) {
        // Completed step: terminal pose.
        switch (entry.step.category) {
          case Category::Entrance:
          case Category::Emphasis:
            visual = rest_pose();
            break;
          case Category::Exit:
            visual = ElementVisual{};
            visual.visible = false;
            break;
        }
        continue;
      }
      if (t < entry.start_s) break;  // entries are time-ordered

      // Active step: progress within the current repeat cycle.
      const double raw = (t - entry.start_s) / entry.step.duration_s;
      const double progress = raw - std::floor(raw);
      visual = effect_transform(entry.step.effect, entry.step.category, entry.step.direction,
                                progress, element, slide.canvas_w, slide.canvas_h);
      visual.visible = true;
      break;
    }

    state.by_element[element.name] = visual;
  }
  return state;
}

std::vector<double> frame_times(const Timeline& timeline, double fps) {
  if (fps <= 0.0) {
    throw std::invalid_argument("fps must be positive");
  }
  const long last = static_cast<long>(std::ceil(timeline.total_s * fps - 1e-9));
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(last) + 1);
  for (long i = 0; i <= last; ++i) {
    times.push_back(static_cast<double>(i) / fps);
  }
  return times;
}

}  // namespace slideanim
