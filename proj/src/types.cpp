#include "enex/types.hpp"

namespace enex {

std::string to_string(Origin o) {
  return o == Origin::Scene ? "scene" : "private_area";
}

std::string to_string(Sink s) {
  return s == Sink::Scene ? "scene" : "private_area";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Entry: return "Entry";
    case EventKind::Exit: return "Exit";
    case EventKind::JustAppeared: return "JustAppeared";
    case EventKind::ReEntry: return "ReEntry";
  }
  return "?";
}

std::string to_string(TrackState s) {
  switch (s) {
    case TrackState::Tentative: return "Tentative";
    case TrackState::Confirmed: return "Confirmed";
    case TrackState::Missing: return "Missing";
    case TrackState::Terminated: return "Terminated";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(const std::string& s) {
  if (s == "Entry") return EventKind::Entry;
  if (s == "Exit") return EventKind::Exit;
  if (s == "JustAppeared") return EventKind::JustAppeared;
  if (s == "ReEntry") return EventKind::ReEntry;
  return std::nullopt;
}

}  // namespace enex
