#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "etree/error.hpp"

namespace etree {

/// Conventional state names for two-state (operating / failing) components.
inline constexpr std::string_view kUpState = "up";
inline constexpr std::string_view kDownState = "down";

struct ComponentId {
  std::string name;

  friend auto operator<=>(const ComponentId&, const ComponentId&) = default;
};

/// One component being in one named state, e.g. M1:down.
struct AtomicEvent {
  ComponentId component;
  std::string state;

  static AtomicEvent up(ComponentId component) {
    return {std::move(component), std::string(kUpState)};
  }
  static AtomicEvent down(ComponentId component) {
    return {std::move(component), std::string(kDownState)};
  }

  std::string label() const { return component.name + ":" + state; }

  friend auto operator<=>(const AtomicEvent&, const AtomicEvent&) = default;
};

/// One scenario: an ordered event sequence with at most one event per
/// component.
using Path = std::vector<AtomicEvent>;

/// Parses "component:state" (the model-file and CLI spelling).
inline AtomicEvent parse_event(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size())
    raise(ErrorCode::SyntaxError,
          "expected 'component:state', got '" + std::string(text) + "'");
  return AtomicEvent{ComponentId{std::string(text.substr(0, colon))},
                     std::string(text.substr(colon + 1))};
}

inline std::string format_path(const Path& path) {
  std::string out;
  for (const AtomicEvent& event : path) {
    if (!out.empty()) out += ' ';
    out += event.label();
  }
  return out;
}

}  // namespace etree
