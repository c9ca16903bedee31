#include "slideanim/grammar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "slideanim/catalog.hpp"

namespace slideanim {

namespace {

struct PhraseEntry {
  std::string phrase;
  std::string family;
  Category category;
  Direction direction;
  bool canonical;
};

const char* direction_noun(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Top: return "top";
    case Direction::Bottom: return "bottom";
    case Direction::None: break;
  }
  return "";
}

std::vector<PhraseEntry> build_phrase_bank() {
  std::vector<PhraseEntry> bank;
  auto add = [&bank](const char* family, Category cat, Direction dir, std::string phrase,
                     bool canonical) {
    bank.push_back(PhraseEntry{std::move(phrase), family, cat, dir, canonical});
  };
  auto add_plain = [&add](const char* family, Category cat,
                          std::initializer_list<const char*> phrases) {
    bool first = true;
    for (const char* p : phrases) {
      add(family, cat, Direction::None, p, first);
      first = false;
    }
  };
  auto add_directional = [&add](const char* family, Category cat,
                                std::initializer_list<const char*> templates) {
    constexpr std::array<Direction, 4> dirs = {Direction::Left, Direction::Right,
                                               Direction::Top, Direction::Bottom};
    bool first = true;
    for (const char* tmpl : templates) {
      for (Direction d : dirs) {
        std::string phrase = tmpl;
        auto pos = phrase.find("{dir}");
        phrase.replace(pos, 5, direction_noun(d));
        add(family, cat, d, std::move(phrase), first);
      }
      first = false;
    }
  };

  add_plain("Fade", Category::Entrance, {"fades in", "fades into view"});
  add_plain("Fade", Category::Exit, {"fades out", "fades away"});
  add_directional("FlyFrom", Category::Entrance,
                  {"flies in from the {dir}", "soars in from the {dir}"});
  add_directional("FlyTo", Category::Exit,
                  {"flies out toward the {dir}", "soars out toward the {dir}"});
  add_directional("Wipe", Category::Entrance,
                  {"wipes in from the {dir}", "sweeps in from the {dir}"});
  add_directional("Wipe", Category::Exit,
                  {"wipes out toward the {dir}", "sweeps out toward the {dir}"});
  add_plain("Box", Category::Entrance, {"appears in a growing box", "emerges in a growing box"});
  add_plain("Box", Category::Exit,
            {"disappears in a shrinking box", "vanishes in a shrinking box"});
  add_plain("Blinds", Category::Entrance,
            {"appears through opening blinds", "is revealed through blinds"});
  add_plain("Blinds", Category::Exit,
            {"disappears behind closing blinds", "is hidden behind blinds"});
  add_plain("Checkerboard", Category::Entrance,
            {"appears in a checkerboard pattern", "fills in as a checkerboard"});
  add_plain("Checkerboard", Category::Exit,
            {"disappears in a checkerboard pattern", "dissolves as a checkerboard"});
  add_plain("Circle", Category::Entrance,
            {"appears in an expanding circle", "is revealed by an expanding circle"});
  add_plain("Circle", Category::Exit,
            {"disappears in a contracting circle", "is hidden by a contracting circle"});
  add_plain("Pinwheel", Category::Entrance,
            {"appears in a pinwheel sweep", "is revealed by a pinwheel sweep"});
  add_plain("Pinwheel", Category::Exit,
            {"disappears in a pinwheel sweep", "is hidden by a pinwheel sweep"});

  add_plain("Spin", Category::Emphasis, {"spins", "spins around"});
  add_plain("Teeter", Category::Emphasis, {"teeters", "rocks from side to side"});
  add_plain("FlashBulb", Category::Emphasis, {"flashes brightly", "flares like a flash bulb"});
  add_plain("GrowShrink", Category::Emphasis, {"grows and shrinks", "swells and shrinks back"});
  add_plain("Pulse", Category::Emphasis, {"pulses", "pulses gently"});
  add_plain("Wave", Category::Emphasis, {"bobs in a wave motion", "waves up and down"});
  add_plain("Blink", Category::Emphasis, {"blinks", "blinks on and off"});
  add_plain("Darken", Category::Emphasis, {"darkens briefly", "dims briefly"});
  add_plain("Lighten", Category::Emphasis, {"lightens briefly", "brightens briefly"});
  add_plain("Transparency", Category::Emphasis,
            {"turns translucent briefly", "fades to translucency and back"});

  // Longest-first so "spins around" wins over "spins" while scanning.
  std::stable_sort(bank.begin(), bank.end(), [](const PhraseEntry& a, const PhraseEntry& b) {
    return a.phrase.size() > b.phrase.size();
  });
  return bank;
}

const std::vector<PhraseEntry>& phrase_bank() {
  static const std::vector<PhraseEntry> bank = build_phrase_bank();
  return bank;
}

const PhraseEntry* canonical_phrase(const std::string& family, Category cat, Direction dir) {
  for (const auto& entry : phrase_bank()) {
    if (entry.canonical && entry.category == cat && entry.family == family &&
        entry.direction == dir) {
      return &entry;
    }
  }
  return nullptr;
}

std::vector<const PhraseEntry*> phrase_variants(const std::string& family, Category cat,
                                                Direction dir) {
  std::vector<const PhraseEntry*> out;
  for (const auto& entry : phrase_bank()) {
    if (entry.category == cat && entry.family == family && entry.direction == dir) {
      out.push_back(&entry);
    }
  }
  // Canonical first, then synonyms.
  std::stable_sort(out.begin(), out.end(),
                   [](const PhraseEntry* a, const PhraseEntry* b) {
                     return a->canonical && !b->canonical;
                   });
  return out;
}

const char* category_label(Category c) {
  switch (c) {
    case Category::Entrance: return "Entrance";
    case Category::Emphasis: return "Emphasis";
    case Category::Exit: return "Exit";
  }
  return "?";
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---- low-level scanning helpers -------------------------------------------

bool scan_literal(const std::string& text, std::size_t& pos, const char* lit) {
  std::size_t n = std::char_traits<char>::length(lit);
  if (text.compare(pos, n, lit) != 0) return false;
  pos += n;
  return true;
}

bool scan_uint(const std::string& text, std::size_t& pos, int& out) {
  std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start || pos - start > 9) return false;
  out = std::atoi(text.substr(start, pos - start).c_str());
  return true;
}

// Accepts an integer or 1-3 decimal places.
bool scan_seconds(const std::string& text, std::size_t& pos, double& out) {
  std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) return false;
  if (pos < text.size() && text[pos] == '.') {
    std::size_t dot = pos++;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t decimals = pos - dot - 1;
    if (decimals < 1 || decimals > 3) return false;
  }
  out = std::strtod(text.substr(start, pos - start).c_str(), nullptr);
  return true;
}

// Finds the longest registered phrase starting at `pos`, restricted to the
// given category when `category_known` is set.
const PhraseEntry* match_phrase_at(const std::string& text, std::size_t pos) {
  for (const auto& entry : phrase_bank()) {
    if (text.compare(pos, entry.phrase.size(), entry.phrase) == 0) return &entry;
  }
  return nullptr;
}

}  // namespace

std::string format_seconds(double v) {
  if (std::fabs(v) < 1e-9) return "0";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string format_action_line(const AnimationStep& step) {
  const PhraseEntry* phrase = canonical_phrase(step.effect, step.category, step.direction);
  if (phrase == nullptr) {
    throw std::invalid_argument("no registered phrase for effect '" + step.effect +
                                "' in category " + to_string(step.category));
  }
  std::string line = std::to_string(step.index);
  line += ". (";
  line += category_label(step.category);
  line += ") element '";
  line += step.element;
  line += "' ";
  line += phrase->phrase;
  line += " over ";
  line += format_seconds(step.duration_s);
  line += " s, ";
  line += format_seconds(step.delay_s);
  line += " s delay, repeat ";
  line += std::to_string(step.repeat);
  return line;
}

AnimationStep parse_action_line(const std::string& line) {
  auto fail = [&line](const std::string& what, std::size_t begin) -> AnimationStep {
    throw ParseError(what, begin, line.size());
  };

  AnimationStep step;
  std::size_t pos = 0;
  if (!scan_uint(line, pos, step.index)) return fail("expected step index", pos);
  if (!scan_literal(line, pos, ". (")) return fail("expected '. ('", pos);

  std::size_t cat_start = pos;
  std::size_t cat_end = line.find(')', pos);
  if (cat_end == std::string::npos) return fail("unterminated category", cat_start);
  std::string cat_word = line.substr(cat_start, cat_end - cat_start);
  std::string cat_lower = cat_word;
  std::transform(cat_lower.begin(), cat_lower.end(), cat_lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (!parse_category(cat_lower, step.category)) {
    return fail("unknown category '" + cat_word + "'", cat_start);
  }
  pos = cat_end + 1;

  if (!scan_literal(line, pos, " element '")) return fail("expected \" element '\"", pos);
  std::size_t name_end = line.find('\'', pos);
  if (name_end == std::string::npos || name_end == pos) {
    return fail("unterminated element name", pos);
  }
  step.element = line.substr(pos, name_end - pos);
  pos = name_end + 1;
  if (!scan_literal(line, pos, " ")) return fail("expected space after element name", pos);

  std::size_t phrase_start = pos;
  const PhraseEntry* phrase = match_phrase_at(line, pos);
  if (phrase == nullptr) {
    std::size_t over = line.find(" over ", pos);
    std::string unknown =
        over == std::string::npos ? line.substr(pos) : line.substr(pos, over - pos);
    throw ParseError("unknown effect phrase '" + unknown + "'", phrase_start,
                     phrase_start + unknown.size());
  }
  if (phrase->category != step.category) {
    throw ParseError("phrase '" + phrase->phrase + "' is not a " +
                         to_string(step.category) + " phrase",
                     phrase_start, phrase_start + phrase->phrase.size());
  }
  step.effect = phrase->family;
  step.direction = phrase->direction;
  pos += phrase->phrase.size();

  if (!scan_literal(line, pos, " over ")) return fail("expected ' over '", pos);
  if (!scan_seconds(line, pos, step.duration_s)) return fail("expected duration", pos);
  if (!scan_literal(line, pos, " s, ")) return fail("expected ' s, '", pos);
  if (!scan_seconds(line, pos, step.delay_s)) return fail("expected delay", pos);
  if (!scan_literal(line, pos, " s delay, repeat ")) {
    return fail("expected ' s delay, repeat '", pos);
  }
  if (!scan_uint(line, pos, step.repeat)) return fail("expected repeat count", pos);
  if (pos != line.size()) return fail("trailing characters after repeat count", pos);
  return step;
}

std::string format_action_list(const AnimationPlan& plan) {
  std::string out;
  for (const auto& step : plan.steps) {
    out += format_action_line(step);
    out += '\n';
  }
  return out;
}

std::vector<AnimationStep> parse_action_list(const std::string& text) {
  std::vector<AnimationStep> steps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::size_t end = eol == std::string::npos ? text.size() : eol;
    if (end > pos) steps.push_back(parse_action_line(text.substr(pos, end - pos)));
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return steps;
}

std::string render_narrative(const AnimationPlan& plan) {
  static const std::array<const char*, 3> middles = {"Then", "Next", "After that"};
  std::string out;
  const int k = static_cast<int>(plan.steps.size());
  for (int i = 0; i < k; ++i) {
    const AnimationStep& step = plan.steps[static_cast<std::size_t>(i)];
    const char* opener = i == 0            ? "First"
                         : i == k - 1      ? "Finally"
                                           : middles[static_cast<std::size_t>(i - 1) % 3];
    auto variants = phrase_variants(step.effect, step.category, step.direction);
    if (variants.empty()) {
      throw std::invalid_argument("no registered phrase for effect '" + step.effect + "'");
    }
    const PhraseEntry* phrase =
        variants[(fnv1a64(step.element) + static_cast<std::uint64_t>(step.index)) %
                 variants.size()];

    if (!out.empty()) out += ' ';
    out += opener;
    out += ", the element '";
    out += step.element;
    out += "' ";
    out += phrase->phrase;
    out += " over ";
    out += format_seconds(step.duration_s);
    out += " seconds";
    if (step.delay_s > 1e-9) {
      out += " after a ";
      out += format_seconds(step.delay_s);
      out += " second delay";
    }
    if (step.repeat > 1) {
      out += ", repeated ";
      out += std::to_string(step.repeat);
      out += " times";
    }
    out += '.';
  }
  return out;
}

ActionUnit unit_from_step(const AnimationStep& step) {
  ActionUnit unit;
  unit.category = step.category;
  unit.element = step.element;
  unit.effect = step.effect;
  if (step.direction != Direction::None) unit.direction = step.direction;
  unit.duration_s = step.duration_s;
  unit.delay_s = step.delay_s;
  unit.repeat = step.repeat;
  return unit;
}

namespace {

// Generic verbs that still signal a category when no registered phrase
// matches; they produce partial units (category + element only).
struct FallbackVerb {
  const char* verb;
  Category category;
};

constexpr std::array<FallbackVerb, 12> kFallbackVerbs = {{
    {"appears", Category::Entrance},
    {"enters", Category::Entrance},
    {"arrives", Category::Entrance},
    {"shows up", Category::Entrance},
    {"is highlighted", Category::Emphasis},
    {"shakes", Category::Emphasis},
    {"wobbles", Category::Emphasis},
    {"glows", Category::Emphasis},
    {"disappears", Category::Exit},
    {"vanishes", Category::Exit},
    {"leaves", Category::Exit},
    {"exits", Category::Exit},
}};

bool parse_narrative_sentence(const std::string& text, std::size_t begin, std::size_t end,
                              ActionUnit& unit) {
  const std::string sentence = text.substr(begin, end - begin);

  // Element name: first quoted span.
  std::size_t q1 = sentence.find('\'');
  if (q1 == std::string::npos) return false;
  std::size_t q2 = sentence.find('\'', q1 + 1);
  if (q2 == std::string::npos || q2 == q1 + 1) return false;
  std::string element = sentence.substr(q1 + 1, q2 - q1 - 1);

  // Effect phrase anywhere after the element name.
  const PhraseEntry* phrase = nullptr;
  for (std::size_t pos = q2 + 1; pos < sentence.size(); ++pos) {
    phrase = match_phrase_at(sentence, pos);
    if (phrase != nullptr) break;
  }

  if (phrase == nullptr) {
    for (const auto& fallback : kFallbackVerbs) {
      if (sentence.find(fallback.verb, q2 + 1) != std::string::npos) {
        unit = ActionUnit{};
        unit.category = fallback.category;
        unit.element = std::move(element);
        unit.span_begin = begin;
        unit.span_end = end;
        return true;
      }
    }
    return false;
  }

  unit = ActionUnit{};
  unit.category = phrase->category;
  unit.element = std::move(element);
  unit.effect = phrase->family;
  if (phrase->direction != Direction::None) unit.direction = phrase->direction;

  double value = 0.0;
  std::size_t pos = sentence.find(" over ");
  if (pos != std::string::npos) {
    std::size_t p = pos + 6;
    if (scan_seconds(sentence, p, value) &&
        (scan_literal(sentence, p, " seconds") || scan_literal(sentence, p, " s"))) {
      unit.duration_s = value;
    }
  }
  pos = sentence.find(" after a ");
  if (pos != std::string::npos) {
    std::size_t p = pos + 9;
    if (scan_seconds(sentence, p, value) && scan_literal(sentence, p, " second delay")) {
      unit.delay_s = value;
    }
  }
  pos = sentence.find(", repeated ");
  if (pos != std::string::npos) {
    std::size_t p = pos + 11;
    int count = 0;
    if (scan_uint(sentence, p, count) && scan_literal(sentence, p, " times")) {
      unit.repeat = count;
    }
  }
  unit.span_begin = begin;
  unit.span_end = end;
  return true;
}

// Sentence boundary: terminal punctuation followed by whitespace or end of
// line. A '.' between digits is a decimal point, not a boundary.
std::vector<std::pair<std::size_t, std::size_t>> split_sentences(const std::string& text,
                                                                 std::size_t begin,
                                                                 std::size_t end) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t start = begin;
  for (std::size_t i = begin; i < end; ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    bool at_end = i + 1 >= end;
    bool before_space = !at_end && std::isspace(static_cast<unsigned char>(text[i + 1]));
    if (!at_end && !before_space) continue;
    spans.emplace_back(start, i + 1);
    start = i + 1;
    while (start < end && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
    i = start - 1;
  }
  if (start < end) spans.emplace_back(start, end);
  return spans;
}

}  // namespace

std::vector<ActionUnit> extract_action_units(const std::string& text) {
  std::vector<ActionUnit> units;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::size_t end = eol == std::string::npos ? text.size() : eol;
    if (end > pos && text[end - 1] == '\r') --end;  // CRLF input
    if (end > pos) {
      bool parsed_line = false;
      try {
        AnimationStep step = parse_action_line(text.substr(pos, end - pos));
        ActionUnit unit = unit_from_step(step);
        unit.span_begin = pos;
        unit.span_end = end;
        units.push_back(std::move(unit));
        parsed_line = true;
      } catch (const ParseError&) {
      }
      if (!parsed_line) {
        for (auto [s_begin, s_end] : split_sentences(text, pos, end)) {
          ActionUnit unit;
          if (parse_narrative_sentence(text, s_begin, s_end, unit)) {
            units.push_back(std::move(unit));
          }
        }
      }
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return units;
}

}  // namespace slideanim
