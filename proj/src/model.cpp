#include "rbn/model.hpp"

#include <algorithm>
#include <sstream>

namespace rbn {

bool Configuration::covers(const Configuration& other) const {
  if (other.dimension() != dimension()) throw ModelError("configuration dimension mismatch");
  for (std::size_t q = 0; q < counts_.size(); ++q)
    if (counts_[q] < other.counts_[q]) return false;
  return true;
}

Configuration& Configuration::operator+=(const Configuration& other) {
  if (other.dimension() != dimension()) throw ModelError("configuration dimension mismatch");
  for (std::size_t q = 0; q < counts_.size(); ++q) counts_[q] += other.counts_[q];
  return *this;
}

Configuration& Configuration::operator-=(const Configuration& other) {
  if (!covers(other)) throw ModelError("multiset difference would be negative");
  for (std::size_t q = 0; q < counts_.size(); ++q) counts_[q] -= other.counts_[q];
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Configuration& c) {
  os << '(';
  for (std::size_t q = 0; q < c.dimension(); ++q) os << (q ? "," : "") << c[q];
  return os << ')';
}

Rbn::Rbn(std::vector<std::string> states, std::vector<std::string> letters) {
  for (auto& s : states) add_state(std::move(s));
  for (auto& a : letters) add_letter(std::move(a));
}

StateId Rbn::add_state(std::string name) {
  if (has_state(name)) throw ModelError("duplicate state '" + name + "'");
  states_.push_back(std::move(name));
  rebuild_index();
  return StateId{static_cast<std::uint32_t>(states_.size() - 1)};
}

Letter Rbn::add_letter(std::string name) {
  if (has_letter(name)) throw ModelError("duplicate letter '" + name + "'");
  letters_.push_back(std::move(name));
  rebuild_index();
  return Letter{static_cast<std::uint32_t>(letters_.size() - 1)};
}

bool Rbn::add_transition(const Transition& t) {
  if (t.source.index >= states_.size() || t.target.index >= states_.size())
    throw ModelError("transition references an undeclared state");
  if (t.letter.index >= letters_.size()) throw ModelError("transition references an undeclared letter");
  if (std::find(transitions_.begin(), transitions_.end(), t) != transitions_.end()) return false;
  transitions_.push_back(t);
  rebuild_index();
  return true;
}

bool Rbn::add_broadcast(std::string_view from, std::string_view a, std::string_view to) {
  return add_broadcast(state(from), letter(a), state(to));
}

bool Rbn::add_receive(std::string_view from, std::string_view a, std::string_view to) {
  return add_receive(state(from), letter(a), state(to));
}

StateId Rbn::state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) throw ModelError("unknown state '" + std::string(name) + "'");
  return StateId{static_cast<std::uint32_t>(it - states_.begin())};
}

Letter Rbn::letter(std::string_view name) const {
  auto it = std::find(letters_.begin(), letters_.end(), name);
  if (it == letters_.end()) throw ModelError("unknown letter '" + std::string(name) + "'");
  return Letter{static_cast<std::uint32_t>(it - letters_.begin())};
}

bool Rbn::has_state(std::string_view name) const {
  return std::find(states_.begin(), states_.end(), name) != states_.end();
}

bool Rbn::has_letter(std::string_view name) const {
  return std::find(letters_.begin(), letters_.end(), name) != letters_.end();
}

Configuration Rbn::config(std::initializer_list<std::pair<std::string_view, Count>> entries) const {
  Configuration c(state_count());
  for (auto [name, n] : entries) c[state(name)] += n;
  return c;
}

void Rbn::rebuild_index() {
  const auto nq = states_.size(), na = letters_.size();
  broadcasts_.clear();
  receive_index_.assign(nq * na, {});
  receive_rindex_.assign(nq * na, {});
  for (const auto& t : transitions_) {
    if (t.kind == Action::Broadcast) {
      broadcasts_.push_back(t);
    } else {
      receive_index_[t.source.index * na + t.letter.index].push_back(t.target);
      receive_rindex_[t.target.index * na + t.letter.index].push_back(t.source);
    }
  }
  for (auto& v : receive_index_) std::sort(v.begin(), v.end());
  for (auto& v : receive_rindex_) std::sort(v.begin(), v.end());
}

bool operator==(const Rbn& a, const Rbn& b) {
  if (a.states_ != b.states_ || a.letters_ != b.letters_) return false;
  auto ta = a.transitions_, tb = b.transitions_;
  std::sort(ta.begin(), ta.end());
  std::sort(tb.begin(), tb.end());
  return ta == tb;
}

Rbn reverse(const Rbn& r) {
  Rbn out(r.state_names(), r.letter_names());
  for (const auto& t : r.transitions()) out.add_transition({t.target, t.kind, t.letter, t.source});
  return out;
}

std::string to_string(const Rbn& r, const Configuration& c) {
  std::ostringstream os;
  os << "[[";
  bool first = true;
  for (std::size_t q = 0; q < c.dimension(); ++q) {
    if (c[q] == 0) continue;
    os << (first ? "" : ", ");
    first = false;
    if (c[q] != 1) os << c[q] << '*';
    os << r.state_names().at(q);
  }
  os << "]]";
  return os.str();
}

namespace examples {

Rbn three_state_rbn() {
  Rbn r({"q1", "q2", "q3"}, {"a", "b"});
  r.add_broadcast("q1", "a", "q1");
  r.add_receive("q1", "a", "q2");
  r.add_broadcast("q2", "b", "q1");
  r.add_receive("q2", "b", "q3");
  return r;
}

}  // namespace examples

}  // namespace rbn
