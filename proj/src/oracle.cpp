#include "rbn/oracle.hpp"

namespace rbn {

bool member_poststar_oracle(const Rbn& r, const CountingConstraint& gamma, const Configuration& c,
                            std::size_t budget) {
  return poststar_run(r, gamma, c, budget).has_value();
}

std::optional<std::vector<Configuration>> poststar_run(const Rbn& r, const CountingConstraint& gamma,
                                                       const Configuration& c, std::size_t budget) {
  if (gamma.cubes().empty()) return std::nullopt;
  return find_run_backwards(r, c, [&](const Configuration& x) { return gamma.contains(x); }, budget);
}

PoststarOracle::PoststarOracle(Rbn r, CountingConstraint gamma, std::size_t budget)
    : r_(std::move(r)), gamma_(std::move(gamma)), budget_(budget) {}

const ConfigSet& PoststarOracle::closure(std::uint64_t size) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(size); it != cache_.end()) return *it->second;
  }
  auto set = std::make_shared<const ConfigSet>(forward_closure(r_, enumerate_size(gamma_, size), budget_));
  std::lock_guard lock(mutex_);
  return *cache_.emplace(size, std::move(set)).first->second;
}

bool PoststarOracle::contains(const Configuration& c) const { return closure(c.size()).contains(c); }

std::vector<Configuration> oracle_disagreements(const PoststarOracle& oracle, const CountingConstraint& candidate,
                                                std::uint64_t max_size) {
  std::vector<Configuration> out;
  const auto dim = oracle.rbn().state_count();
  for (std::uint64_t n = 0; n <= max_size; ++n)
    for (const auto& c : configurations_of_size(dim, n))
      if (oracle.contains(c) != candidate.contains(c)) out.push_back(c);
  return out;
}

std::vector<Configuration> oracle_disagreements_parallel(const PoststarOracle& oracle,
                                                         const CountingConstraint& candidate,
                                                         std::uint64_t max_size) {
  const auto dim = oracle.rbn().state_count();
  std::vector<Configuration> all;
  for (std::uint64_t n = 0; n <= max_size; ++n) {
    auto level = configurations_of_size(dim, n);
    all.insert(all.end(), level.begin(), level.end());
  }
  std::vector<char> differs(all.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(all.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t i = 0; i < count; ++i) differs[i] = oracle.contains(all[i]) != candidate.contains(all[i]);
  std::vector<Configuration> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (differs[i]) out.push_back(all[i]);
  return out;
}

}  // namespace rbn
