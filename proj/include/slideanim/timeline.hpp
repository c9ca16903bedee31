#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "slideanim/effects.hpp"
#include "slideanim/types.hpp"

namespace slideanim {

struct TimelineEntry {
  AnimationStep step;
  double start_s = 0.0;
  double end_s = 0.0;
};

// Absolute intervals under strictly sequential scheduling: each step starts
// at the previous step's end plus its own delay.
struct Timeline {
  std::string slide_id;
  std::vector<TimelineEntry> entries;
  double total_s = 0.0;
};

struct FrameState {
  std::map<std::string, ElementVisual> by_element;

  const ElementVisual& at(const std::string& name) const;
};

// Throws PlanValidationError when the plan has error-severity violations.
class PlanValidationError : public std::runtime_error {
 public:
  explicit PlanValidationError(const std::string& what) : std::runtime_error(what) {}
};

Timeline compile(const AnimationPlan& plan, const SlideSpec& slide);

// Visual state of every slide element at time t in [0, total_s].
// Hidden before entrance, rest pose between steps, hidden after exit; an
// active step contributes its effect transform at the in-cycle progress.
FrameState sample(const Timeline& timeline, const SlideSpec& slide, double t);

// Sampling grid 0, 1/fps, 2/fps, ... up to the first grid point >= total_s.
std::vector<double> frame_times(const Timeline& timeline, double fps);

}  // namespace slideanim
