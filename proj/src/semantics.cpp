#include "rbn/semantics.hpp"

#include <algorithm>
#include <deque>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rbn {

namespace {

// Distributes up to `available` agents of `source` over its receive targets,
// recursing over sources in order.
struct ReceiverEnumerator {
  const Rbn& r;
  Letter letter;
  const Configuration& pool;  // agents available as receivers
  Configuration& work;        // configuration being built
  Step& step;
  const std::function<void(const Step&, const Configuration&)>& visit;

  void over_states(std::size_t q) {
    const auto nq = r.state_count();
    while (q < nq && (pool[q] == 0 || r.receive_targets(StateId{(std::uint32_t)q}, letter).empty())) ++q;
    if (q == nq) {
      visit(step, work);
      return;
    }
    over_targets(q, 0, pool[q]);
  }

  void over_targets(std::size_t q, std::size_t ti, Count left) {
    const StateId src{(std::uint32_t)q};
    const auto& targets = r.receive_targets(src, letter);
    if (ti == targets.size()) {
      over_states(q + 1);
      return;
    }
    const StateId dst = targets[ti];
    for (Count n = 0; n <= left; ++n) {
      if (n > 0) {
        work[src] -= n;
        work[dst] += n;
        step.receives.push_back({Transition{src, Action::Receive, letter, dst}, n});
      }
      over_targets(q, ti + 1, left - n);
      if (n > 0) {
        step.receives.pop_back();
        work[dst] -= n;
        work[src] += n;
      }
    }
  }
};

}  // namespace

void for_each_step(const Rbn& r, const Configuration& c,
                   const std::function<void(const Step&, const Configuration&)>& visit) {
  if (c.dimension() != r.state_count()) throw ModelError("configuration dimension mismatch");
  for (const auto& t : r.broadcasts()) {
    if (c[t.source] == 0) continue;
    Configuration pool = c;
    pool[t.source] -= 1;
    Configuration work = pool;
    work[t.target] += 1;
    Step step{t, {}};
    ReceiverEnumerator e{r, t.letter, pool, work, step, visit};
    e.over_states(0);
  }
}

void for_each_reception(const Rbn& r, Letter a, const Configuration& pool,
                        const std::function<void(const Configuration&)>& visit) {
  if (pool.dimension() != r.state_count()) throw ModelError("configuration dimension mismatch");
  Configuration work = pool;
  Step step{Transition{{}, Action::Broadcast, a, {}}, {}};
  std::function<void(const Step&, const Configuration&)> forward = [&](const Step&, const Configuration& c) {
    visit(c);
  };
  ReceiverEnumerator e{r, a, pool, work, step, forward};
  e.over_states(0);
}

std::vector<Configuration> successors(const Rbn& r, const Configuration& c) {
  std::vector<Configuration> out;
  for_each_step(r, c, [&](const Step&, const Configuration& next) { out.push_back(next); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Configuration apply_step(const Rbn& r, const Configuration& c, const Step& step) {
  const auto& b = step.broadcast;
  if (b.kind != Action::Broadcast ||
      std::find(r.broadcasts().begin(), r.broadcasts().end(), b) == r.broadcasts().end())
    throw ModelError("step broadcast is not a broadcast transition of the model");
  Configuration removed(r.state_count()), added(r.state_count());
  removed[b.source] += 1;
  added[b.target] += 1;
  for (const auto& [t, n] : step.receives) {
    if (t.kind != Action::Receive || t.letter != b.letter) throw ModelError("receive does not match the broadcast letter");
    const auto& targets = r.receive_targets(t.source, t.letter);
    if (!std::binary_search(targets.begin(), targets.end(), t.target))
      throw ModelError("receive is not a transition of the model");
    removed[t.source] += n;
    added[t.target] += n;
  }
  if (!c.covers(removed)) throw ModelError("step is not enabled");
  return c - removed + added;
}

ConfigSet forward_closure(const Rbn& r, const std::vector<Configuration>& sources, std::size_t budget) {
  ConfigSet seen;
  std::deque<Configuration> queue;
  for (const auto& s : sources)
    if (seen.insert(s).second) queue.push_back(s);
  if (seen.size() > budget) throw BudgetExceeded("forward closure", budget);
  while (!queue.empty()) {
    Configuration c = std::move(queue.front());
    queue.pop_front();
    for_each_step(r, c, [&](const Step&, const Configuration& next) {
      if (seen.insert(next).second) {
        if (seen.size() > budget) throw BudgetExceeded("forward closure", budget);
        queue.push_back(next);
      }
    });
  }
  return seen;
}

ConfigSet forward_closure_parallel(const Rbn& r, const std::vector<Configuration>& sources,
                                   std::size_t budget) {
  ConfigSet seen;
  std::vector<Configuration> frontier;
  for (const auto& s : sources)
    if (seen.insert(s).second) frontier.push_back(s);
  if (seen.size() > budget) throw BudgetExceeded("forward closure", budget);
  while (!frontier.empty()) {
    std::vector<std::vector<Configuration>> produced(frontier.size());
    const auto n = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) produced[i] = successors(r, frontier[i]);
    std::vector<Configuration> next;
    for (auto& batch : produced)
      for (auto& c : batch)
        if (seen.insert(c).second) {
          if (seen.size() > budget) throw BudgetExceeded("forward closure", budget);
          next.push_back(std::move(c));
        }
    frontier = std::move(next);
  }
  return seen;
}

std::vector<Configuration> reachable_set(const Rbn& r, const Configuration& c, std::size_t budget) {
  auto seen = forward_closure(r, {c}, budget);
  std::vector<Configuration> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool reachable(const Rbn& r, const Configuration& from, const Configuration& to, std::size_t budget) {
  if (from.size() != to.size()) return false;
  if (from == to) return true;
  return forward_closure(r, {from}, budget).contains(to);
}

bool coverable(const Rbn& r, const Configuration& from, const Configuration& target, std::size_t budget) {
  if (target.size() > from.size()) return false;
  for (const auto& c : forward_closure(r, {from}, budget))
    if (c.covers(target)) return true;
  return false;
}

std::vector<Configuration> configurations_of_size(std::size_t dim, std::uint64_t n) {
  std::vector<Configuration> out;
  if (dim == 0) {
    if (n == 0) out.emplace_back(0);
    return out;
  }
  Configuration c(dim);
  // lexicographic order: first coordinate ascending
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t q, std::uint64_t left) {
    if (q + 1 == dim) {
      c[q] = static_cast<Count>(left);
      out.push_back(c);
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      c[q] = static_cast<Count>(v);
      rec(q + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

std::optional<std::vector<Configuration>> find_run_backwards(
    const Rbn& r, const Configuration& target,
    const std::function<bool(const Configuration&)>& is_source, std::size_t budget) {
  const Rbn rev = reverse(r);
  std::unordered_map<Configuration, Configuration, ConfigurationHash> parent;
  std::deque<Configuration> queue{target};
  parent.emplace(target, target);
  auto unwind = [&](Configuration c) {
    std::vector<Configuration> run{c};
    while (!(c == target)) {
      c = parent.at(c);
      run.push_back(c);
    }
    return run;
  };
  while (!queue.empty()) {
    Configuration c = std::move(queue.front());
    queue.pop_front();
    if (is_source(c)) return unwind(c);
    for (auto& prev : successors(rev, c)) {
      if (parent.emplace(prev, c).second) {
        if (parent.size() > budget) throw BudgetExceeded("backward search", budget);
        queue.push_back(std::move(prev));
      }
    }
  }
  return std::nullopt;
}

bool is_run(const Rbn& r, const std::vector<Configuration>& run) {
  for (std::size_t i = 0; i + 1 < run.size(); ++i) {
    auto next = successors(r, run[i]);
    if (!std::binary_search(next.begin(), next.end(), run[i + 1])) return false;
  }
  return true;
}

ReachabilityGraph reachability_graph(const Rbn& r, const Configuration& start, std::size_t budget) {
  ReachabilityGraph g;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;
  index.emplace(start, 0);
  g.nodes.push_back(start);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    std::vector<std::size_t> out;
    for (auto& next : successors(r, g.nodes[i])) {
      auto [it, fresh] = index.emplace(next, g.nodes.size());
      if (fresh) {
        if (g.nodes.size() >= budget) throw BudgetExceeded("reachability graph", budget);
        g.nodes.push_back(next);
      }
      out.push_back(it->second);
    }
    g.edges.push_back(std::move(out));
  }
  return g;
}

std::pair<std::vector<std::size_t>, std::size_t> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& edges) {
  // iterative Tarjan
  const std::size_t n = edges.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei < edges[v].size()) {
        std::size_t w = edges[v][ei++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return {comp, components};
}

}  // namespace rbn
