#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "rbn/counting.hpp"
#include "rbn/oracle.hpp"
#include "rbn/symbolic.hpp"

namespace rbn {

/// Minimal elements of the reachable configurations tracked as θ = (v, S),
/// where every state of S holds at least one abstract agent.
struct ThetaOrderWitness {
  SymbolicConfiguration theta;
  std::vector<Configuration> minimal_elements;  // v + excess, ordered lexicographically
  bool bound_verified = true;                   // false when a search bound below the refinement bound was used
};

/// Tracked/abstract product: state q is concrete copy q, abstract copy |Q| + q.
Rbn product_rbn(const Rbn& r);

/// Initial product constraint of a cube: concrete part exactly v0, abstract
/// part at least one agent on each state of some S0 ⊆ {q : U(q) = ∞}.
CountingConstraint product_initial(const Cube& cube);

/// Antichain saturation over (v, excess) elements; exact and terminating.
std::vector<ThetaOrderWitness> saturate(const Rbn& r, const Cube& cube, std::size_t budget = kDefaultNodeBudget);

/// Roots of the symbolic search for a cube: every (v0, S0) with (v0, S∞) in
/// symb_of_cube and S0 ⊆ S∞.
std::vector<SymbolicConfiguration> expanded_roots(const Cube& cube);

/// Levelwise search for the minimal excess vectors a ∈ [1, n]^S such that
/// (v, a) is reachable in the product. Independent of `saturate`.
ThetaOrderWitness minimal_antichain(const Rbn& r, const Cube& cube, const SymbolicConfiguration& theta,
                                    std::uint64_t n, std::size_t budget = kDefaultNodeBudget);

CountingConstraint poststar(const Rbn& r, const CountingConstraint& a, std::size_t budget = kDefaultNodeBudget);
CountingConstraint prestar(const Rbn& r, const CountingConstraint& a, std::size_t budget = kDefaultNodeBudget);

/// 2‖𝒞‖ + |Q|·N with N = refinement_bound(2‖𝒞‖, |Q|).
boost::multiprecision::cpp_int poststar_norm_bound(const Cube& cube);

}  // namespace rbn
