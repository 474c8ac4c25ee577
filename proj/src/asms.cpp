#include "rbn/asms.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace rbn {

namespace {

std::uint32_t find_name(const std::vector<std::string>& names, std::string_view name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ModelError(std::string("unknown ") + what + " '" + std::string(name) + "'");
  return static_cast<std::uint32_t>(it - names.begin());
}

}  // namespace

void Asms::add(AsmsTransition t) {
  if (t.source.index >= states.size() || t.target.index >= states.size() || t.value.index >= alphabet.size())
    throw ModelError("ASMS transition references an undeclared name");
  if (std::find(transitions.begin(), transitions.end(), t) == transitions.end()) transitions.push_back(t);
}

StateId Asms::state(std::string_view name) const { return StateId{find_name(states, name, "state")}; }
Letter Asms::letter(std::string_view name) const { return Letter{find_name(alphabet, name, "register value")}; }

std::vector<AsmsConfiguration> asms_successors(const Asms& a, const AsmsConfiguration& c) {
  std::vector<AsmsConfiguration> out;
  for (const auto& t : a.transitions) {
    if (c.agents[t.source] == 0) continue;
    if (t.op == RegisterOp::Read && c.reg != t.value) continue;
    AsmsConfiguration next{c.agents, t.value};
    next.agents[t.source] -= 1;
    next.agents[t.target] += 1;
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AsmsReach asms_cube_reach_bounded(const Asms& a, const AsmsCube& from, const AsmsCube& to, std::uint64_t lo,
                                  std::uint64_t hi, std::size_t budget) {
  for (std::uint64_t n = lo; n <= hi; ++n) {
    std::map<AsmsConfiguration, AsmsConfiguration> parent;
    std::deque<AsmsConfiguration> queue;
    for (auto& c : enumerate_size(from.cube, n)) {
      AsmsConfiguration s{std::move(c), from.reg};
      if (parent.emplace(s, s).second) queue.push_back(s);
    }
    while (!queue.empty()) {
      auto c = std::move(queue.front());
      queue.pop_front();
      if (c.reg == to.reg && to.cube.contains(c.agents)) {
        AsmsReach res{true, n, {c}};
        while (!(parent.at(res.run.back()) == res.run.back())) res.run.push_back(parent.at(res.run.back()));
        std::reverse(res.run.begin(), res.run.end());
        return res;
      }
      for (auto& next : asms_successors(a, c))
        if (parent.emplace(next, c).second) {
          if (parent.size() > budget) throw BudgetExceeded("ASMS reachability", budget);
          queue.push_back(std::move(next));
        }
    }
  }
  return {};
}

void IoNet::add(IoTransition t) {
  if (t.source.index >= states.size() || t.observed.index >= states.size() || t.target.index >= states.size())
    throw ModelError("IO transition references an undeclared state");
  if (std::find(transitions.begin(), transitions.end(), t) == transitions.end()) transitions.push_back(t);
}

StateId IoNet::state(std::string_view name) const { return StateId{find_name(states, name, "state")}; }

std::vector<Configuration> io_successors(const IoNet& n, const Configuration& c) {
  std::vector<Configuration> out;
  for (const auto& t : n.transitions) {
    Configuration need(c.dimension());
    need[t.source] += 1;
    need[t.observed] += 1;
    if (!c.covers(need)) continue;
    Configuration next = c;
    next[t.source] -= 1;
    next[t.target] += 1;
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rbn
