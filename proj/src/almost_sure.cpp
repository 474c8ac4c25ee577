#include "rbn/almost_sure.hpp"

#include <unordered_map>

namespace rbn {

Cube init_cube(std::size_t dim, StateId init) {
  Cube c(std::vector<Bound>(dim, 0), std::vector<Bound>(dim, 0));
  c.upper.at(init.index) = kInfinity;
  return c;
}

Cube upward_cube(std::size_t dim, StateId fin) {
  Cube c = Cube::universal(dim);
  c.lower.at(fin.index) = 1;
  return c;
}

bool as_cover_fixed(const Rbn& r, Count k, StateId init, StateId fin, std::size_t budget) {
  const auto g = reachability_graph(r, Configuration::unit(r.state_count(), init, k), budget);
  // backward propagation of "can cover fin" inside the reachable graph
  const auto n = g.nodes.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : g.edges[i]) preds[j].push_back(i);
  std::vector<bool> good(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (g.nodes[i][fin] >= 1) {
      good[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (auto p : preds[i])
      if (!good[p]) {
        good[p] = true;
        stack.push_back(p);
      }
  }
  return std::all_of(good.begin(), good.end(), [](bool b) { return b; });
}

std::optional<std::pair<StateId, Configuration>> witness_infinitude(const CountingConstraint& s, std::uint64_t n) {
  for (const auto& cube : s.cubes()) {
    if (cube.is_empty()) continue;
    for (std::size_t q = 0; q < cube.dimension(); ++q) {
      if (cube.upper[q] != kInfinity) continue;
      Configuration c(cube.dimension());
      for (std::size_t p = 0; p < cube.dimension(); ++p) c[p] = static_cast<Count>(cube.lower[p]);
      c[q] = static_cast<Count>(n + 1);
      if (!cube.contains(c)) continue;  // n below the representation norm
      return std::pair{StateId{static_cast<std::uint32_t>(q)}, c};
    }
  }
  return std::nullopt;
}

CutoffVerdict cutoff(const Rbn& r, StateId init, StateId fin, std::size_t budget) {
  const auto dim = r.state_count();
  const auto expr = NiceExpr::conj(NiceExpr::post_star(CountingConstraint(init_cube(dim, init))),
                                   NiceExpr::negate(NiceExpr::pre_star(CountingConstraint(upward_cube(dim, fin)))));
  CutoffVerdict v;
  v.evidence = eval(r, expr, budget);
  const auto n = norm(v.evidence);
  if (is_finite(v.evidence)) {
    v.polarity = Polarity::Positive;
    v.bound = dim * n + 1;
    return v;
  }
  v.polarity = Polarity::Negative;
  v.bound = n;
  for (const auto& c : v.evidence.cubes())
    if (!c.is_empty() && !c.is_bounded()) {
      v.infinite_cube = c;
      break;
    }
  v.witness = witness_infinitude(v.evidence, n);
  return v;
}

}  // namespace rbn
