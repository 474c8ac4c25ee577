#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "rbn/counting.hpp"
#include "rbn/semantics.hpp"

namespace rbn {

/// Is some C0 ∈ Γ with |C0| = |C| able to reach C? Backward search from C in
/// reverse(R), stopping at the first member of Γ.
bool member_poststar_oracle(const Rbn& r, const CountingConstraint& gamma, const Configuration& c,
                            std::size_t budget = kDefaultNodeBudget);

/// A forward run from a member of Γ to C, if one exists.
std::optional<std::vector<Configuration>> poststar_run(const Rbn& r, const CountingConstraint& gamma,
                                                       const Configuration& c,
                                                       std::size_t budget = kDefaultNodeBudget);

/// Memoized post*(Γ) membership: one forward closure per configuration size.
/// Thread-safe.
class PoststarOracle {
 public:
  PoststarOracle(Rbn r, CountingConstraint gamma, std::size_t budget = kDefaultNodeBudget);

  bool contains(const Configuration& c) const;
  const Rbn& rbn() const { return r_; }
  const CountingConstraint& constraint() const { return gamma_; }

 private:
  const ConfigSet& closure(std::uint64_t size) const;

  Rbn r_;
  CountingConstraint gamma_;
  std::size_t budget_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, std::shared_ptr<const ConfigSet>> cache_;
};

/// Configurations of size ≤ max_size where membership in `candidate` differs
/// from the oracle, in lexicographic order within each size.
std::vector<Configuration> oracle_disagreements(const PoststarOracle& oracle, const CountingConstraint& candidate,
                                                std::uint64_t max_size);
/// OpenMP variant of oracle_disagreements; same result.
std::vector<Configuration> oracle_disagreements_parallel(const PoststarOracle& oracle,
                                                         const CountingConstraint& candidate,
                                                         std::uint64_t max_size);

}  // namespace rbn
