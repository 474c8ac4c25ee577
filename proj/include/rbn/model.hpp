#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rbn {

using Count = std::uint32_t;

struct StateId {
  std::uint32_t index = 0;
  auto operator<=>(const StateId&) const = default;
};

struct Letter {
  std::uint32_t index = 0;
  auto operator<=>(const Letter&) const = default;
};

enum class Action : std::uint8_t { Broadcast, Receive };

struct Transition {
  StateId source;
  Action kind = Action::Broadcast;
  Letter letter;
  StateId target;
  auto operator<=>(const Transition&) const = default;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an explicit exploration exceeds its node budget. Never a silent
/// truncation: callers either raise the budget or report the failure.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

inline constexpr std::size_t kDefaultNodeBudget = 5'000'000;

/// A multiset over the states of a model, stored as a dense count vector.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t states) : counts_(states, 0) {}
  explicit Configuration(std::vector<Count> counts) : counts_(std::move(counts)) {}
  Configuration(std::initializer_list<Count> counts) : counts_(counts) {}

  static Configuration unit(std::size_t states, StateId q, Count n = 1) {
    Configuration c(states);
    c.counts_.at(q.index) = n;
    return c;
  }

  std::size_t dimension() const { return counts_.size(); }
  Count operator[](std::size_t q) const { return counts_[q]; }
  Count& operator[](std::size_t q) { return counts_[q]; }
  Count operator[](StateId q) const { return counts_[q.index]; }
  Count& operator[](StateId q) { return counts_[q.index]; }

  std::span<const Count> counts() const { return counts_; }
  std::uint64_t size() const {
    std::uint64_t s = 0;
    for (auto c : counts_) s += c;
    return s;
  }

  bool covers(const Configuration& other) const;
  Configuration& operator+=(const Configuration& other);
  Configuration& operator-=(const Configuration& other);
  friend Configuration operator+(Configuration a, const Configuration& b) { return a += b; }
  friend Configuration operator-(Configuration a, const Configuration& b) { return a -= b; }

  // lexicographic on counts; this is the canonical output order
  auto operator<=>(const Configuration&) const = default;

 private:
  std::vector<Count> counts_;
};

std::ostream& operator<<(std::ostream& os, const Configuration& c);

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : c.counts()) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Reconfigurable broadcast network (Q, Σ, δ).
class Rbn {
 public:
  Rbn() = default;
  Rbn(std::vector<std::string> states, std::vector<std::string> letters);

  StateId add_state(std::string name);
  Letter add_letter(std::string name);
  /// Adds a transition; duplicates are ignored. Returns false for a duplicate.
  bool add_transition(const Transition& t);
  bool add_broadcast(StateId from, Letter a, StateId to) {
    return add_transition({from, Action::Broadcast, a, to});
  }
  bool add_receive(StateId from, Letter a, StateId to) {
    return add_transition({from, Action::Receive, a, to});
  }
  bool add_broadcast(std::string_view from, std::string_view a, std::string_view to);
  bool add_receive(std::string_view from, std::string_view a, std::string_view to);

  std::size_t state_count() const { return states_.size(); }
  std::size_t letter_count() const { return letters_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& letter_names() const { return letters_; }
  const std::string& name(StateId q) const { return states_.at(q.index); }
  const std::string& name(Letter a) const { return letters_.at(a.index); }
  StateId state(std::string_view name) const;
  Letter letter(std::string_view name) const;
  bool has_state(std::string_view name) const;
  bool has_letter(std::string_view name) const;

  /// Transitions in insertion order.
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<Transition>& broadcasts() const { return broadcasts_; }
  /// Receive transitions (source, ?a, target) leaving `source` on letter `a`, ordered by target.
  const std::vector<StateId>& receive_targets(StateId source, Letter a) const {
    return receive_index_[source.index * letters_.size() + a.index];
  }
  /// Sources with a receive transition on `a` into `target`.
  const std::vector<StateId>& receive_sources(StateId target, Letter a) const {
    return receive_rindex_[target.index * letters_.size() + a.index];
  }

  Configuration config(std::initializer_list<std::pair<std::string_view, Count>> entries) const;
  Configuration empty_config() const { return Configuration(state_count()); }

  friend bool operator==(const Rbn& a, const Rbn& b);

 private:
  void rebuild_index();

  std::vector<std::string> states_;
  std::vector<std::string> letters_;
  std::vector<Transition> transitions_;
  std::vector<Transition> broadcasts_;
  std::vector<std::vector<StateId>> receive_index_;
  std::vector<std::vector<StateId>> receive_rindex_;
};

/// Same states and alphabet, every transition flipped.
Rbn reverse(const Rbn& r);

std::string to_string(const Rbn& r, const Configuration& c);

namespace examples {
/// q1 !a q1; q1 ?a q2; q2 !b q1; q2 ?b q3.
Rbn three_state_rbn();
}  // namespace examples

}  // namespace rbn

template <>
struct std::hash<rbn::Configuration> : rbn::ConfigurationHash {};
