#pragma once

#include <deque>
#include <map>
#include <string>

#include "modsup/automaton.hpp"

namespace modsup::detail {

// Breadth-first construction of a product-like automaton whose states are
// identified by `Key`; new keys are queued in discovery order.
template <typename Key>
class Explorer {
 public:
  explicit Explorer(Automaton& out) : out_(out) {}

  StateId intern(const Key& key, const std::string& label, bool marked) {
    auto [it, inserted] = ids_.emplace(key, kNoState);
    if (inserted) {
      it->second = out_.add_state(label, marked);
      queue_.push_back(key);
    }
    return it->second;
  }

  bool empty() const { return queue_.empty(); }
  Key pop() {
    Key k = queue_.front();
    queue_.pop_front();
    return k;
  }
  StateId id(const Key& key) const { return ids_.at(key); }

 private:
  Automaton& out_;
  std::map<Key, StateId> ids_;
  std::deque<Key> queue_;
};

}  // namespace modsup::detail
