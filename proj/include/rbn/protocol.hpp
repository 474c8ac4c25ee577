#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rbn/expr.hpp"

namespace rbn {

struct Protocol {
  Rbn rbn;
  std::vector<StateId> inputs;
  std::vector<std::uint8_t> output;  // O(q) ∈ {0,1}, indexed by state

  void validate() const;
  /// C_v: v(i) agents in the i-th input state.
  Configuration initial(const std::vector<Count>& v) const;
  bool is_consensus(const Configuration& c, int b) const;
};

/// φ given by one counting constraint per output value, over the input coordinates.
struct PredicateSpec {
  CountingConstraint zero;
  CountingConstraint one;
  const CountingConstraint& side(int b) const { return b ? one : zero; }
  int value(const std::vector<Count>& v) const;  // throws if v is on neither or both sides
};

Cube consensus_cube(const Protocol& p, int b);
CountingConstraint stable_consensus(const Protocol& p, int b, std::size_t budget = kDefaultNodeBudget);
CountingConstraint initial_constraint(const Protocol& p, const PredicateSpec& phi, int b);

struct Verdict {
  bool computes = true;
  std::optional<std::pair<int, Configuration>> counterexample;
};

Verdict verify_computes(const Protocol& p, const PredicateSpec& phi, std::size_t budget = kDefaultNodeBudget);

/// Convergence on the fixed-size graph from C_v: a fair run ends in a bottom SCC.
struct Convergence {
  bool converges_zero = false;  // every bottom SCC is a 0-consensus
  bool converges_one = false;
  bool converges() const { return converges_zero || converges_one; }
  bool converges_to(int b) const { return b ? converges_one : converges_zero; }
};

Convergence bottom_scc_oracle(const Protocol& p, const std::vector<Count>& v, std::size_t budget = kDefaultNodeBudget);
/// The same analysis from an arbitrary configuration.
Convergence bottom_scc_from(const Protocol& p, const Configuration& c, std::size_t budget = kDefaultNodeBudget);

struct Simulation {
  std::vector<Configuration> trace;
  std::optional<int> verdict;  // consensus value of the last configuration, if any
};

/// Random run: a uniformly chosen enabled (agent, broadcast) pair, each other
/// agent with a matching receive joining with probability 1/2.
Simulation simulate_fair(const Protocol& p, const std::vector<Count>& v, std::uint64_t seed, std::size_t max_steps);

namespace examples {
/// The three-state network plus q1 ?b q3 and q3 !b q3; outputs (0,0,1). Computes x ≥ 3.
Protocol at_least_three();
/// at_least_three without q1 ?b q3.
Protocol at_least_three_mutated();
/// x ≥ 3 over one input coordinate.
PredicateSpec at_least_three_spec();
}  // namespace examples

}  // namespace rbn
