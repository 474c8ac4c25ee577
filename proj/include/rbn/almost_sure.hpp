#pragma once

#include <optional>

#include "rbn/expr.hpp"

namespace rbn {

enum class Polarity { Positive, Negative };

struct CutoffVerdict {
  Polarity polarity = Polarity::Positive;
  std::uint64_t bound = 0;
  CountingConstraint evidence;  // post*([init]) ∩ complement of pre*(↑fin)
  std::optional<Cube> infinite_cube;
  std::optional<std::pair<StateId, Configuration>> witness;
};

/// [init]: any number of agents in `init`, none elsewhere.
Cube init_cube(std::size_t dim, StateId init);
/// ↑fin: at least one agent in `fin`.
Cube upward_cube(std::size_t dim, StateId fin);

/// Every configuration reachable from ⟦k·init⟧ can still cover fin.
bool as_cover_fixed(const Rbn& r, Count k, StateId init, StateId fin, std::size_t budget = kDefaultNodeBudget);

CutoffVerdict cutoff(const Rbn& r, StateId init, StateId fin, std::size_t budget = kDefaultNodeBudget);

/// A state q and member C with C(q) = n+1 and every other coordinate ≤ n, read
/// off an ∞ coordinate of a nonempty cube; nothing iff the set is finite.
std::optional<std::pair<StateId, Configuration>> witness_infinitude(const CountingConstraint& s, std::uint64_t n);

}  // namespace rbn
