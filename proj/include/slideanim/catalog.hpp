#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slideanim/types.hpp"

namespace slideanim {

constexpr std::uint8_t kMaskEntrance = 1u << 0;
constexpr std::uint8_t kMaskEmphasis = 1u << 1;
constexpr std::uint8_t kMaskExit = 1u << 2;

struct EffectKind {
  std::string family;          // canonical name, e.g. "Fade", "FlyFrom"
  std::uint8_t category_mask;  // which categories the family supports
  bool directional;            // requires a direction parameter
  std::string paired_family;   // exit counterpart of an entrance-only family (and vice versa)

  bool supports(Category c) const {
    switch (c) {
      case Category::Entrance: return (category_mask & kMaskEntrance) != 0;
      case Category::Emphasis: return (category_mask & kMaskEmphasis) != 0;
      case Category::Exit: return (category_mask & kMaskExit) != 0;
    }
    return false;
  }
};

// Full registered catalog in stable registration order.
const std::vector<EffectKind>& effect_catalog();

// nullptr when the family is not registered.
const EffectKind* find_effect(std::string_view family);

// Entrance-exit pairs, counting each direction of a directional family as
// its own pair (FlyFrom/FlyTo and Wipe each contribute four).
int entrance_exit_pair_count();

int emphasis_family_count();

// Directional families expand to one variant per direction ("FlyFromTop");
// everything else is its own single variant. Used by the synthesizer's
// weight tables and the stats reports.
std::string variant_name(const std::string& family, Direction dir);
std::vector<std::string> category_variants(Category c);

// Inverse of variant_name; returns false on unknown variant.
bool parse_variant(const std::string& variant, std::string& family, Direction& dir);

}  // namespace slideanim
