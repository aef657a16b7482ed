#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace modsup {

using Event = std::string;
using EventSet = std::set<Event>;
using Word = std::vector<Event>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

EventSet set_union(const EventSet& a, const EventSet& b);
EventSet set_intersection(const EventSet& a, const EventSet& b);
EventSet set_difference(const EventSet& a, const EventSet& b);
bool is_subset(const EventSet& a, const EventSet& b);
std::string join_events(const EventSet& events, const std::string& sep = ",");

/// Erase every event of `w` outside `target`.
Word project_word(const Word& w, const EventSet& target);

/// Space-separated rendering; the empty word renders as "<eps>".
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& text);

struct EventAttributes {
  bool controllable = true;
  bool observable = true;

  bool operator==(const EventAttributes&) const = default;
};

/// Global registry of events and their control/observation attributes.
/// Uncontrollable and unobservable sets are derived on demand.
class EventTable {
 public:
  EventTable() = default;

  /// Inserts or checks an event. Re-adding with different attributes throws.
  void add(const Event& e, EventAttributes attrs);
  void set(const Event& e, EventAttributes attrs) { attrs_[e] = attrs; }

  bool contains(const Event& e) const { return attrs_.count(e) != 0; }
  const EventAttributes& attributes(const Event& e) const;
  bool controllable(const Event& e) const { return attributes(e).controllable; }
  bool observable(const Event& e) const { return attributes(e).observable; }

  EventSet events() const;
  EventSet controllable_events() const;
  EventSet uncontrollable_events() const;
  EventSet observable_events() const;
  EventSet unobservable_events() const;

  const std::map<Event, EventAttributes>& entries() const { return attrs_; }

 private:
  std::map<Event, EventAttributes> attrs_;
};

/// Natural projection from `source()*` onto `target()*`.
class ProjectionSpec {
 public:
  ProjectionSpec(EventSet source, EventSet target);

  const EventSet& source() const { return source_; }
  const EventSet& target() const { return target_; }
  bool is_identity() const { return source_ == target_; }

 private:
  EventSet source_;
  EventSet target_;
};

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Deterministic finite automaton over a sorted local alphabet. Transitions
/// are stored densely as `state * |alphabet| + event`.
///
/// The mutating interface is meant for construction; library operations take
/// automata by const reference and return fresh values whose states are all
/// reachable and numbered in breadth-first order from the initial state.
class Automaton {
 public:
  Automaton() = default;
  Automaton(std::string name, const EventSet& alphabet);

  /// One unmarked initial state, no transitions: generated {eps}, marked {}.
  static Automaton empty(std::string name, const EventSet& alphabet);

  StateId add_state(std::string label, bool marked = false);
  void set_initial(StateId s);
  void set_marked(StateId s, bool marked);
  /// Throws on a second transition for the same (state, event).
  void add_transition(StateId from, std::size_t event, StateId to);
  void add_transition(StateId from, const Event& event, StateId to);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Event>& events() const { return events_; }
  EventSet alphabet() const { return EventSet(events_.begin(), events_.end()); }
  std::size_t event_count() const { return events_.size(); }
  std::optional<std::size_t> event_index(const Event& e) const;

  std::size_t state_count() const { return marked_.size(); }
  std::size_t transition_count() const;
  StateId initial() const { return initial_; }
  bool has_initial() const { return initial_ != kNoState; }
  bool marked(StateId s) const { return marked_.at(s) != 0; }
  const std::string& label(StateId s) const { return labels_.at(s); }

  StateId next(StateId s, std::size_t event) const {
    return delta_[static_cast<std::size_t>(s) * events_.size() + event];
  }
  StateId next(StateId s, const Event& e) const;

  /// Follows `w` from the initial state; kNoState if undefined.
  StateId run(const Word& w) const;
  bool generates(const Word& w) const { return run(w) != kNoState; }
  bool accepts(const Word& w) const;

 private:
  void check_state(StateId s) const;

  std::string name_;
  std::vector<Event> events_;
  std::vector<std::string> labels_;
  std::vector<char> marked_;
  std::vector<StateId> delta_;
  StateId initial_ = kNoState;
};

}  // namespace modsup
