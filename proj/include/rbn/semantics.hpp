#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rbn/model.hpp"

namespace rbn {

/// One broadcast plus the multiset of receive transitions that fire with it.
struct Step {
  Transition broadcast;
  std::vector<std::pair<Transition, Count>> receives;  // (transition, multiplicity), multiplicity > 0
};

using ConfigSet = std::unordered_set<Configuration, ConfigurationHash>;

/// Calls `visit(step, successor)` for every step enabled at `c`. The broadcaster
/// is removed before receivers are chosen, so it never receives its own message.
/// Receivers are enumerated per source state (counts per receive transition).
void for_each_step(const Rbn& r, const Configuration& c,
                   const std::function<void(const Step&, const Configuration&)>& visit);

/// Calls `visit(result)` for every way of letting agents of `pool` receive
/// letter `a` (including nobody receiving); `result` is `pool` after the moves.
void for_each_reception(const Rbn& r, Letter a, const Configuration& pool,
                        const std::function<void(const Configuration&)>& visit);

/// Exact successor set, deduplicated and in lexicographic order.
std::vector<Configuration> successors(const Rbn& r, const Configuration& c);

/// Applies a step; throws ModelError if it is not enabled at `c`.
Configuration apply_step(const Rbn& r, const Configuration& c, const Step& step);

/// Forward closure by breadth-first search, sorted lexicographically.
std::vector<Configuration> reachable_set(const Rbn& r, const Configuration& c,
                                         std::size_t budget = kDefaultNodeBudget);

/// Multi-source forward closure (the union of the closures of `sources`).
ConfigSet forward_closure(const Rbn& r, const std::vector<Configuration>& sources,
                          std::size_t budget = kDefaultNodeBudget);

/// Level-synchronous OpenMP variant of forward_closure; same result set.
ConfigSet forward_closure_parallel(const Rbn& r, const std::vector<Configuration>& sources,
                                   std::size_t budget = kDefaultNodeBudget);

bool reachable(const Rbn& r, const Configuration& from, const Configuration& to,
               std::size_t budget = kDefaultNodeBudget);
bool coverable(const Rbn& r, const Configuration& from, const Configuration& target,
               std::size_t budget = kDefaultNodeBudget);

/// All configurations of size `n` over `dim` states, in lexicographic order.
std::vector<Configuration> configurations_of_size(std::size_t dim, std::uint64_t n);

/// Searches backwards from `target` for a configuration accepted by `is_source`
/// and returns a forward run source -> ... -> target, or nothing.
std::optional<std::vector<Configuration>> find_run_backwards(
    const Rbn& r, const Configuration& target,
    const std::function<bool(const Configuration&)>& is_source,
    std::size_t budget = kDefaultNodeBudget);

/// True iff every consecutive pair of `run` is a single step of `r`.
bool is_run(const Rbn& r, const std::vector<Configuration>& run);

/// Explicit reachability graph from one configuration (node 0 is the start).
struct ReachabilityGraph {
  std::vector<Configuration> nodes;
  std::vector<std::vector<std::size_t>> edges;
};

ReachabilityGraph reachability_graph(const Rbn& r, const Configuration& start,
                                     std::size_t budget = kDefaultNodeBudget);

/// Tarjan SCC; returns the component id of each node and the number of components.
std::pair<std::vector<std::size_t>, std::size_t> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& edges);

}  // namespace rbn
