#pragma once

#include <string>
#include <vector>

#include "slideanim/types.hpp"

namespace slideanim {

struct Violation {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string code;     // stable identifier, e.g. "lifecycle", "unknown_element"
  std::string message;  // human-readable detail
  int step_index = 0;   // 1-based step the violation refers to, 0 for plan-level
};

struct ValidationReport {
  std::vector<Violation> items;

  bool empty() const { return items.empty(); }
  // A plan is usable when no error-severity violations exist; out-of-range
  // durations/delays and step counts on external plans stay warnings.
  bool ok() const;
  int error_count() const;
  int warning_count() const;
};

// Structural slide checks: canvas bounds, unique names, composition
// (exactly one title, at most one body, 1-4 images). Errors only.
ValidationReport validate_slide(const SlideSpec& slide);

// Checks every AnimationStep and AnimationPlan invariant plus element
// existence against the slide. Throws std::invalid_argument when plan and
// slide disagree on slide_id (a usage error, not a validation finding).
ValidationReport validate_plan(const AnimationPlan& plan, const SlideSpec& slide);

// End time of the last step under sequential scheduling
// (start_i = end_{i-1} + delay_i, end_i = start_i + duration_i * repeat_i).
// Empty plan yields 0.
double plan_duration(const AnimationPlan& plan);

}  // namespace slideanim
