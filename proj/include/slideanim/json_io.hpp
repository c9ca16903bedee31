#pragma once

#include <string>
#include <vector>

#include "slideanim/grammar.hpp"
#include "slideanim/types.hpp"
#include "slideanim/validate.hpp"

namespace slideanim {

// Plan document, bit-exact field names:
//   {"slide": <id>, "steps": [{"index": ..., "category": ..., "element": ...,
//    "effect": ..., "direction": <string|null>, "duration_s": ..., "delay_s": ...,
//    "repeat": ...}, ...]}
std::string plan_to_json(const AnimationPlan& plan);
AnimationPlan plan_from_json(const std::string& json_text);

std::string slide_to_json(const SlideSpec& slide);
SlideSpec slide_from_json(const std::string& json_text);

std::string units_to_json(const std::vector<ActionUnit>& units);
std::string report_to_json(const ValidationReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

AnimationPlan load_plan(const std::string& path);
SlideSpec load_slide(const std::string& path);

}  // namespace slideanim
