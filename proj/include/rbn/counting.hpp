#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rbn/model.hpp"

namespace rbn {

/// Upper bound of a cube interval; kInfinity stands for ∞.
using Bound = std::uint64_t;
inline constexpr Bound kInfinity = std::numeric_limits<Bound>::max();
/// Largest finite bound accepted anywhere (keeps U+1 and sums free of overflow).
inline constexpr Bound kMaxFiniteBound = (Bound{1} << 62);

/// {C : L ≤ C ≤ U}. L(q) > U(q) for some q is a legal, empty cube.
struct Cube {
  std::vector<Bound> lower;
  std::vector<Bound> upper;

  Cube() = default;
  Cube(std::vector<Bound> l, std::vector<Bound> u);

  static Cube universal(std::size_t dim);
  static Cube exact(const Configuration& c);

  std::size_t dimension() const { return lower.size(); }
  bool contains(const Configuration& c) const;
  bool is_empty() const;
  bool is_bounded() const;  // no ∞ coordinate
  bool operator==(const Cube&) const = default;
};

/// A finite union of cubes over a fixed number of states.
class CountingConstraint {
 public:
  explicit CountingConstraint(std::size_t dim = 0) : dim_(dim) {}
  CountingConstraint(std::size_t dim, std::vector<Cube> cubes);
  explicit CountingConstraint(Cube c);

  static CountingConstraint empty(std::size_t dim) { return CountingConstraint(dim); }
  static CountingConstraint universal(std::size_t dim) { return CountingConstraint(Cube::universal(dim)); }

  std::size_t dimension() const { return dim_; }
  const std::vector<Cube>& cubes() const { return cubes_; }
  void add(Cube c);
  bool contains(const Configuration& c) const;
  bool operator==(const CountingConstraint&) const = default;

 private:
  std::size_t dim_;
  std::vector<Cube> cubes_;
};

bool cube_member(const Cube& cube, const Configuration& c);
bool is_empty_cube(const Cube& cube);
/// a ⊆ b as sets.
bool cube_subset(const Cube& a, const Cube& b);

Cube intersect(const Cube& a, const Cube& b);
CountingConstraint intersect(const CountingConstraint& a, const CountingConstraint& b);
CountingConstraint unite(const CountingConstraint& a, const CountingConstraint& b);
CountingConstraint complement(const Cube& a);
CountingConstraint complement(const CountingConstraint& a);

/// Drops empty and subsumed cubes, merges cubes that differ in a single
/// coordinate whose intervals overlap or touch. Denotation is unchanged.
CountingConstraint simplify(const CountingConstraint& a);

std::uint64_t norm(const Cube& c);
std::uint64_t norm(const CountingConstraint& a);

bool is_finite(const CountingConstraint& a);

/// Members of size n, lexicographically ordered, without duplicates.
std::vector<Configuration> enumerate_size(const Cube& c, std::uint64_t n);
std::vector<Configuration> enumerate_size(const CountingConstraint& a, std::uint64_t n);

std::string to_string(const Cube& c);
std::string to_string(const CountingConstraint& a);

}  // namespace rbn
