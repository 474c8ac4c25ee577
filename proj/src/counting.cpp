#include "rbn/counting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace rbn {

namespace {

void check_dim(std::size_t a, std::size_t b) {
  if (a != b) throw ModelError("dimension mismatch between counting sets");
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kInfinity - b ? kInfinity : a + b;
}

}  // namespace

Cube::Cube(std::vector<Bound> l, std::vector<Bound> u) : lower(std::move(l)), upper(std::move(u)) {
  if (lower.size() != upper.size()) throw ModelError("cube bounds have different dimensions");
}

Cube Cube::universal(std::size_t dim) { return Cube(std::vector<Bound>(dim, 0), std::vector<Bound>(dim, kInfinity)); }

Cube Cube::exact(const Configuration& c) {
  std::vector<Bound> v(c.counts().begin(), c.counts().end());
  return Cube(v, v);
}

bool Cube::contains(const Configuration& c) const {
  check_dim(dimension(), c.dimension());
  for (std::size_t q = 0; q < lower.size(); ++q)
    if (c[q] < lower[q] || c[q] > upper[q]) return false;
  return true;
}

bool Cube::is_empty() const {
  for (std::size_t q = 0; q < lower.size(); ++q)
    if (lower[q] > upper[q]) return true;
  return false;
}

bool Cube::is_bounded() const {
  return std::none_of(upper.begin(), upper.end(), [](Bound b) { return b == kInfinity; });
}

CountingConstraint::CountingConstraint(std::size_t dim, std::vector<Cube> cubes) : dim_(dim) {
  for (auto& c : cubes) add(std::move(c));
}

CountingConstraint::CountingConstraint(Cube c) : dim_(c.dimension()) { add(std::move(c)); }

void CountingConstraint::add(Cube c) {
  check_dim(dim_, c.dimension());
  cubes_.push_back(std::move(c));
}

bool CountingConstraint::contains(const Configuration& c) const {
  check_dim(dim_, c.dimension());
  return std::any_of(cubes_.begin(), cubes_.end(), [&](const Cube& k) { return k.contains(c); });
}

bool cube_member(const Cube& cube, const Configuration& c) { return cube.contains(c); }
bool is_empty_cube(const Cube& cube) { return cube.is_empty(); }

bool cube_subset(const Cube& a, const Cube& b) {
  check_dim(a.dimension(), b.dimension());
  if (a.is_empty()) return true;
  for (std::size_t q = 0; q < a.dimension(); ++q)
    if (a.lower[q] < b.lower[q] || a.upper[q] > b.upper[q]) return false;
  return true;
}

Cube intersect(const Cube& a, const Cube& b) {
  check_dim(a.dimension(), b.dimension());
  Cube out = a;
  for (std::size_t q = 0; q < a.dimension(); ++q) {
    out.lower[q] = std::max(a.lower[q], b.lower[q]);
    out.upper[q] = std::min(a.upper[q], b.upper[q]);
  }
  return out;
}

CountingConstraint intersect(const CountingConstraint& a, const CountingConstraint& b) {
  check_dim(a.dimension(), b.dimension());
  CountingConstraint out(a.dimension());
  for (const auto& x : a.cubes())
    for (const auto& y : b.cubes()) {
      auto c = intersect(x, y);
      if (!c.is_empty()) out.add(std::move(c));
    }
  return out;
}

CountingConstraint unite(const CountingConstraint& a, const CountingConstraint& b) {
  check_dim(a.dimension(), b.dimension());
  CountingConstraint out = a;
  for (const auto& c : b.cubes()) out.add(c);
  return out;
}

CountingConstraint complement(const Cube& a) {
  const auto dim = a.dimension();
  CountingConstraint out(dim);
  for (std::size_t q = 0; q < dim; ++q) {
    if (a.lower[q] > 0) {
      Cube c = Cube::universal(dim);
      c.upper[q] = a.lower[q] - 1;
      out.add(std::move(c));
    }
    if (a.upper[q] != kInfinity) {
      Cube c = Cube::universal(dim);
      c.lower[q] = a.upper[q] + 1;
      out.add(std::move(c));
    }
  }
  return out;
}

CountingConstraint complement(const CountingConstraint& a) {
  CountingConstraint out = CountingConstraint::universal(a.dimension());
  for (const auto& c : a.cubes()) {
    if (c.is_empty()) continue;
    out = simplify(intersect(out, complement(c)));
  }
  return out;
}

namespace {

// Drops cubes contained in another surviving cube.
bool drop_subsumed(std::vector<Cube>& cubes) {
  std::vector<char> dead(cubes.size(), 0);
  for (std::size_t i = 0; i < cubes.size(); ++i)
    for (std::size_t j = 0; j < cubes.size(); ++j)
      if (i != j && !dead[j] && cube_subset(cubes[i], cubes[j])) {
        dead[i] = 1;
        break;
      }
  std::vector<Cube> kept;
  for (std::size_t i = 0; i < cubes.size(); ++i)
    if (!dead[i]) kept.push_back(std::move(cubes[i]));
  const bool changed = kept.size() != cubes.size();
  cubes = std::move(kept);
  return changed;
}

// Merges cubes that agree off coordinate `at` and whose intervals at `at`
// overlap or touch.
bool merge_along(std::vector<Cube>& cubes, std::size_t at) {
  std::map<std::pair<std::vector<Bound>, std::vector<Bound>>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    auto key = std::make_pair(cubes[i].lower, cubes[i].upper);
    key.first[at] = key.second[at] = 0;
    groups[std::move(key)].push_back(i);
  }
  bool changed = false;
  std::vector<Cube> out;
  for (auto& [key, idx] : groups) {
    std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return cubes[x].lower[at] < cubes[y].lower[at]; });
    Cube cur = cubes[idx.front()];
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const Cube& next = cubes[idx[k]];
      if (cur.upper[at] == kInfinity || cur.upper[at] + 1 >= next.lower[at]) {
        cur.upper[at] = std::max(cur.upper[at], next.upper[at]);
        changed = true;
      } else {
        out.push_back(std::move(cur));
        cur = next;
      }
    }
    out.push_back(std::move(cur));
  }
  cubes = std::move(out);
  return changed;
}

}  // namespace

CountingConstraint simplify(const CountingConstraint& a) {
  std::vector<Cube> cubes;
  for (const auto& c : a.cubes())
    if (!c.is_empty()) cubes.push_back(c);
  for (bool changed = true; changed;) {
    changed = drop_subsumed(cubes);
    for (std::size_t q = 0; q < a.dimension(); ++q) changed = merge_along(cubes, q) || changed;
  }
  std::sort(cubes.begin(), cubes.end(), [](const Cube& x, const Cube& y) {
    return std::tie(x.lower, x.upper) < std::tie(y.lower, y.upper);
  });
  return CountingConstraint(a.dimension(), std::move(cubes));
}

std::uint64_t norm(const Cube& c) {
  std::uint64_t l = 0, u = 0;
  for (std::size_t q = 0; q < c.dimension(); ++q) {
    l = sat_add(l, c.lower[q]);
    if (c.upper[q] != kInfinity) u = sat_add(u, c.upper[q]);
  }
  return std::max(l, u);
}

std::uint64_t norm(const CountingConstraint& a) {
  std::uint64_t n = 0;
  for (const auto& c : a.cubes()) n = std::max(n, norm(c));
  return n;
}

bool is_finite(const CountingConstraint& a) {
  return std::all_of(a.cubes().begin(), a.cubes().end(),
                     [](const Cube& c) { return c.is_empty() || c.is_bounded(); });
}

std::vector<Configuration> enumerate_size(const Cube& c, std::uint64_t n) {
  std::vector<Configuration> out;
  const auto dim = c.dimension();
  if (c.is_empty()) return out;
  std::uint64_t lsum = 0;
  for (auto l : c.lower) lsum = sat_add(lsum, l);
  if (lsum > n) return out;
  if (dim == 0) {
    if (n == 0) out.emplace_back(0);
    return out;
  }
  // suffix capacities prune infeasible branches
  std::vector<std::uint64_t> lsuf(dim + 1, 0), usuf(dim + 1, 0);
  for (std::size_t q = dim; q-- > 0;) {
    lsuf[q] = sat_add(lsuf[q + 1], c.lower[q]);
    usuf[q] = sat_add(usuf[q + 1], c.upper[q]);
  }
  Configuration cur(dim);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t q, std::uint64_t left) {
    if (q == dim) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const std::uint64_t hi = std::min<std::uint64_t>(c.upper[q], left - lsuf[q + 1]);
    for (std::uint64_t v = c.lower[q]; v <= hi; ++v) {
      if (usuf[q + 1] < left - v) continue;
      cur[q] = static_cast<Count>(v);
      rec(q + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

std::vector<Configuration> enumerate_size(const CountingConstraint& a, std::uint64_t n) {
  std::vector<Configuration> out;
  for (const auto& c : a.cubes()) {
    auto part = enumerate_size(c, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const Cube& c) {
  std::ostringstream os;
  os << '{';
  for (std::size_t q = 0; q < c.dimension(); ++q) {
    os << (q ? " " : "") << '[' << c.lower[q] << ',';
    if (c.upper[q] == kInfinity)
      os << "inf";
    else
      os << c.upper[q];
    os << ']';
  }
  return os.str() + '}';
}

std::string to_string(const CountingConstraint& a) {
  if (a.cubes().empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < a.cubes().size(); ++i) s += (i ? " | " : "") + to_string(a.cubes()[i]);
  return s;
}

}  // namespace rbn
