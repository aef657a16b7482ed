#include "modsup/automaton.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace modsup {

EventSet set_union(const EventSet& a, const EventSet& b) {
  EventSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

EventSet set_intersection(const EventSet& a, const EventSet& b) {
  EventSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

EventSet set_difference(const EventSet& a, const EventSet& b) {
  EventSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const EventSet& a, const EventSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string join_events(const EventSet& events, const std::string& sep) {
  std::string out;
  for (const auto& e : events) {
    if (!out.empty()) out += sep;
    out += e;
  }
  return out;
}

Word project_word(const Word& w, const EventSet& target) {
  Word out;
  for (const auto& e : w)
    if (target.count(e)) out.push_back(e);
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "<eps>";
  std::string out;
  for (const auto& e : w) {
    if (!out.empty()) out += ' ';
    out += e;
  }
  return out;
}

Word word_from_string(const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok)
    if (tok != "<eps>") out.push_back(tok);
  return out;
}

void EventTable::add(const Event& e, EventAttributes attrs) {
  auto [it, inserted] = attrs_.emplace(e, attrs);
  if (!inserted && it->second != attrs)
    throw Error("event '" + e + "' declared with conflicting attributes");
}

const EventAttributes& EventTable::attributes(const Event& e) const {
  auto it = attrs_.find(e);
  if (it == attrs_.end()) throw Error("unknown event '" + e + "'");
  return it->second;
}

EventSet EventTable::events() const {
  EventSet out;
  for (const auto& [e, a] : attrs_) out.insert(e);
  return out;
}

EventSet EventTable::controllable_events() const {
  EventSet out;
  for (const auto& [e, a] : attrs_)
    if (a.controllable) out.insert(e);
  return out;
}

EventSet EventTable::uncontrollable_events() const {
  return set_difference(events(), controllable_events());
}

EventSet EventTable::observable_events() const {
  EventSet out;
  for (const auto& [e, a] : attrs_)
    if (a.observable) out.insert(e);
  return out;
}

EventSet EventTable::unobservable_events() const {
  return set_difference(events(), observable_events());
}

ProjectionSpec::ProjectionSpec(EventSet source, EventSet target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!is_subset(target_, source_))
    throw AlphabetMismatch("projection target {" + join_events(target_) +
                           "} is not a subset of source {" + join_events(source_) + "}");
}

Automaton::Automaton(std::string name, const EventSet& alphabet)
    : name_(std::move(name)), events_(alphabet.begin(), alphabet.end()) {}

Automaton Automaton::empty(std::string name, const EventSet& alphabet) {
  Automaton a(std::move(name), alphabet);
  a.set_initial(a.add_state("empty"));
  return a;
}

StateId Automaton::add_state(std::string label, bool marked) {
  const auto id = static_cast<StateId>(marked_.size());
  labels_.push_back(std::move(label));
  marked_.push_back(marked ? 1 : 0);
  delta_.resize(delta_.size() + events_.size(), kNoState);
  return id;
}

void Automaton::check_state(StateId s) const {
  if (s >= marked_.size()) throw Error("state index out of range in automaton '" + name_ + "'");
}

void Automaton::set_initial(StateId s) {
  check_state(s);
  initial_ = s;
}

void Automaton::set_marked(StateId s, bool marked) {
  check_state(s);
  marked_[s] = marked ? 1 : 0;
}

void Automaton::add_transition(StateId from, std::size_t event, StateId to) {
  check_state(from);
  check_state(to);
  if (event >= events_.size()) throw Error("event index out of range");
  auto& slot = delta_[static_cast<std::size_t>(from) * events_.size() + event];
  if (slot != kNoState && slot != to)
    throw Error("nondeterministic transition on '" + events_[event] + "' from state '" +
                labels_[from] + "'");
  if (slot == to)
    throw Error("duplicate transition on '" + events_[event] + "' from state '" + labels_[from] +
                "'");
  slot = to;
}

void Automaton::add_transition(StateId from, const Event& event, StateId to) {
  auto idx = event_index(event);
  if (!idx) throw AlphabetMismatch("event '" + event + "' not in alphabet of '" + name_ + "'");
  add_transition(from, *idx, to);
}

std::optional<std::size_t> Automaton::event_index(const Event& e) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), e);
  if (it == events_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - events_.begin());
}

std::size_t Automaton::transition_count() const {
  return static_cast<std::size_t>(
      std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
}

StateId Automaton::next(StateId s, const Event& e) const {
  auto idx = event_index(e);
  if (!idx) return kNoState;
  return next(s, *idx);
}

StateId Automaton::run(const Word& w) const {
  StateId s = initial_;
  for (const auto& e : w) {
    if (s == kNoState) break;
    s = next(s, e);
  }
  return s;
}

bool Automaton::accepts(const Word& w) const {
  const StateId s = run(w);
  return s != kNoState && marked(s);
}

}  // namespace modsup
