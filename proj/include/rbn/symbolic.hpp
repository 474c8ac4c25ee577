#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rbn/counting.hpp"
#include "rbn/semantics.hpp"

namespace rbn {

/// Subset of Q as a bitmask; models with more than 64 states are rejected by
/// the symbolic layer.
using StateSet = std::uint64_t;

inline bool contains(StateSet s, std::size_t q) { return (s >> q) & 1u; }
inline StateSet with(StateSet s, std::size_t q) { return s | (StateSet{1} << q); }
StateSet state_set(const Rbn& r, std::initializer_list<std::string_view> names);

/// Node (v, S) of the symbolic graph: v tracks agents concretely, S is the
/// support of the abstract remainder.
struct SymbolicConfiguration {
  Configuration concrete;
  StateSet support = 0;
  auto operator<=>(const SymbolicConfiguration&) const = default;
};

struct SymbolicConfigurationHash {
  std::size_t operator()(const SymbolicConfiguration& t) const noexcept {
    return ConfigurationHash{}(t.concrete) * 31u + std::hash<StateSet>{}(t.support);
  }
};

struct SymbolicEdge {
  SymbolicConfiguration source;
  Letter letter;
  SymbolicConfiguration target;
  auto operator<=>(const SymbolicEdge&) const = default;
};

struct LabelledSuccessor {
  Letter letter;
  SymbolicConfiguration target;
  auto operator<=>(const LabelledSuccessor&) const = default;
};

struct SymbolicPath {
  std::vector<SymbolicConfiguration> nodes;
  std::vector<Letter> letters;
};

/// Labelled successors of θ in G_k, sorted and deduplicated. S' ranges only
/// over sets consistent with the per-letter enter/leave relation.
std::vector<LabelledSuccessor> symb_successors(const Rbn& r, std::size_t k, const SymbolicConfiguration& theta);

/// Reference implementation: tries every S' ⊆ Q and every v' of size |v|.
std::vector<LabelledSuccessor> symb_successors_naive(const Rbn& r, std::size_t k,
                                                     const SymbolicConfiguration& theta);

bool is_symb_edge(const Rbn& r, std::size_t k, const SymbolicConfiguration& from, Letter a,
                  const SymbolicConfiguration& to);

std::vector<SymbolicConfiguration> symb_reachable(const Rbn& r, std::size_t k,
                                                  const std::vector<SymbolicConfiguration>& roots,
                                                  std::size_t budget = kDefaultNodeBudget);

/// Shortest path in G_k, if any.
std::optional<SymbolicPath> symb_path(const Rbn& r, std::size_t k, const SymbolicConfiguration& from,
                                      const SymbolicConfiguration& to, std::size_t budget = kDefaultNodeBudget);

/// The abstraction θ' of C' after `step`, built from the abstract excess of C
/// over v first and from the concrete part otherwise.
SymbolicConfiguration lift_step(const Rbn& r, const SymbolicConfiguration& theta, const Configuration& c,
                                const Step& step);

/// C(q) = v(q) off S and C(q) ≥ v(q) + N on S.
bool support_member(const SymbolicConfiguration& theta, std::uint64_t n, const Configuration& c);

bool is_valid_path(const Rbn& r, std::size_t k, const SymbolicPath& p);
std::size_t count_bad_pairs(const SymbolicPath& p);
SymbolicPath normalize_path(const Rbn& r, std::size_t k, const SymbolicPath& p);

boost::multiprecision::cpp_int refinement_bound(std::uint64_t k, std::uint64_t q_count);

Cube cube_of(const SymbolicConfiguration& theta);
std::vector<SymbolicConfiguration> symb_of_cube(const Cube& cube);

/// Every node of G_k with edges; used for DOT export.
struct SymbolicGraph {
  std::size_t index = 0;
  std::vector<SymbolicConfiguration> nodes;
  std::vector<SymbolicEdge> edges;
};

SymbolicGraph materialize(const Rbn& r, std::size_t k, std::size_t budget = kDefaultNodeBudget);
std::string to_dot(const Rbn& r, const SymbolicGraph& g);
std::string to_string(const Rbn& r, const SymbolicConfiguration& theta);

}  // namespace rbn
