#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slideanim/types.hpp"

namespace slideanim {

// Smallest semantic segment of a description. Category and element are
// always present; everything else may be absent for partial parses.
struct ActionUnit {
  Category category = Category::Entrance;
  std::string element;
  std::string effect;  // effect family, empty when unknown
  std::optional<Direction> direction;
  std::optional<double> duration_s;
  std::optional<double> delay_s;
  std::optional<int> repeat;
  std::size_t span_begin = 0;  // character range in the source text
  std::size_t span_end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t begin, std::size_t end)
      : std::runtime_error(what), span_begin_(begin), span_end_(end) {}
  std::size_t span_begin() const { return span_begin_; }
  std::size_t span_end() const { return span_end_; }

 private:
  std::size_t span_begin_;
  std::size_t span_end_;
};

// Canonical template:
//   <index>. (<Category>) element '<name>' <effect phrase> over <d> s, <delay> s delay, repeat <r>
std::string format_action_line(const AnimationStep& step);

// Exact inverse of format_action_line. Throws ParseError on malformed input
// or an unregistered effect phrase.
AnimationStep parse_action_line(const std::string& line);

// One line per step, LF separated, trailing newline.
std::string format_action_list(const AnimationPlan& plan);
std::vector<AnimationStep> parse_action_list(const std::string& text);

// One sentence per step on a single line, each sentence independently
// recoverable by extract_action_units.
std::string render_narrative(const AnimationPlan& plan);

// Rule-based decomposition over the controlled grammar. Recognizes canonical
// action lines and narrative sentences; falls back to a partial unit when a
// sentence pairs a quoted element name with a generic category verb. Never
// throws; unrecognized text yields no units.
std::vector<ActionUnit> extract_action_units(const std::string& text);

// Seconds formatted for the grammar: "0" for zero, else one decimal place.
std::string format_seconds(double v);

// Unit equivalent of a plan step (all fields populated). Used by tests and
// the narrative-recovery check.
ActionUnit unit_from_step(const AnimationStep& step);

}  // namespace slideanim
