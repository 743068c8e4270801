#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace snapswim {

// Fin mounting positions on the shell. Rear slots are driven by the rear
// (first) actuator pair, front slots by the front pair.
enum class FinSlot { front_left = 0, front_right = 1, rear_left = 2, rear_right = 3 };

inline constexpr std::array<FinSlot, 4> kAllFinSlots = {FinSlot::front_left, FinSlot::front_right,
                                                       FinSlot::rear_left, FinSlot::rear_right};

constexpr std::string_view slot_name(FinSlot s) {
  switch (s) {
    case FinSlot::front_left:
      return "front_left";
    case FinSlot::front_right:
      return "front_right";
    case FinSlot::rear_left:
      return "rear_left";
    case FinSlot::rear_right:
      return "rear_right";
  }
  return "?";
}

inline std::optional<FinSlot> slot_from_name(std::string_view name) {
  for (FinSlot s : kAllFinSlots) {
    if (slot_name(s) == name) return s;
  }
  return std::nullopt;
}

constexpr FinSlot mirrored(FinSlot s) {
  switch (s) {
    case FinSlot::front_left:
      return FinSlot::front_right;
    case FinSlot::front_right:
      return FinSlot::front_left;
    case FinSlot::rear_left:
      return FinSlot::rear_right;
    case FinSlot::rear_right:
      return FinSlot::rear_left;
  }
  return s;
}

}  // namespace snapswim
