#include "rbn/protocol.hpp"

#include <algorithm>
#include <random>

namespace rbn {

void Protocol::validate() const {
  if (output.size() != rbn.state_count()) throw ModelError("output function must cover every state");
  for (auto o : output)
    if (o > 1) throw ModelError("outputs must be 0 or 1");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].index >= rbn.state_count()) throw ModelError("input state out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (inputs[i] == inputs[j]) throw ModelError("input states must be distinct");
  }
}

Configuration Protocol::initial(const std::vector<Count>& v) const {
  if (v.size() != inputs.size()) throw ModelError("input vector has the wrong length");
  Configuration c(rbn.state_count());
  for (std::size_t i = 0; i < v.size(); ++i) c[inputs[i]] += v[i];
  return c;
}

bool Protocol::is_consensus(const Configuration& c, int b) const {
  for (std::size_t q = 0; q < c.dimension(); ++q)
    if (c[q] > 0 && output[q] != b) return false;
  return true;
}

int PredicateSpec::value(const std::vector<Count>& v) const {
  Configuration c(std::vector<Count>(v.begin(), v.end()));
  const bool z = zero.contains(c), o = one.contains(c);
  if (z == o) throw ModelError("predicate sides are not complementary at this input");
  return o ? 1 : 0;
}

Cube consensus_cube(const Protocol& p, int b) {
  Cube c = Cube::universal(p.rbn.state_count());
  for (std::size_t q = 0; q < c.dimension(); ++q)
    if (p.output[q] != b) c.upper[q] = 0;
  return c;
}

CountingConstraint stable_consensus(const Protocol& p, int b, std::size_t budget) {
  const auto e = NiceExpr::negate(NiceExpr::pre_star(NiceExpr::negate(NiceExpr::atom(CountingConstraint(consensus_cube(p, b))))));
  return eval(p.rbn, e, budget);
}

CountingConstraint initial_constraint(const Protocol& p, const PredicateSpec& phi, int b) {
  const auto& side = phi.side(b);
  if (side.dimension() != p.inputs.size()) throw ModelError("predicate arity differs from the number of inputs");
  const auto dim = p.rbn.state_count();
  CountingConstraint out(dim);
  for (const auto& k : side.cubes()) {
    Cube c(std::vector<Bound>(dim, 0), std::vector<Bound>(dim, 0));
    for (std::size_t i = 0; i < p.inputs.size(); ++i) {
      c.lower[p.inputs[i].index] = k.lower[i];
      c.upper[p.inputs[i].index] = k.upper[i];
    }
    out.add(std::move(c));
  }
  return out;
}

Verdict verify_computes(const Protocol& p, const PredicateSpec& phi, std::size_t budget) {
  p.validate();
  for (int b : {0, 1}) {
    const auto st = stable_consensus(p, b, budget);
    const auto e = NiceExpr::conj(NiceExpr::post_star(initial_constraint(p, phi, b)),
                                  NiceExpr::negate(NiceExpr::pre_star(st)));
    const auto res = is_empty(p.rbn, e, budget);
    if (!res.empty) return {false, std::pair{b, *res.witness}};
  }
  return {};
}

Convergence bottom_scc_from(const Protocol& p, const Configuration& c, std::size_t budget) {
  const auto g = reachability_graph(p.rbn, c, budget);
  const auto [comp, count] = strongly_connected_components(g.edges);
  std::vector<bool> bottom(count, true);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (auto j : g.edges[i])
      if (comp[i] != comp[j]) bottom[comp[i]] = false;
  Convergence out{true, true};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!bottom[comp[i]]) continue;
    out.converges_zero = out.converges_zero && p.is_consensus(g.nodes[i], 0);
    out.converges_one = out.converges_one && p.is_consensus(g.nodes[i], 1);
  }
  return out;
}

Convergence bottom_scc_oracle(const Protocol& p, const std::vector<Count>& v, std::size_t budget) {
  return bottom_scc_from(p, p.initial(v), budget);
}

Simulation simulate_fair(const Protocol& p, const std::vector<Count>& v, std::uint64_t seed, std::size_t max_steps) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const auto& r = p.rbn;
  Simulation sim;
  Configuration c = p.initial(v);
  sim.trace.push_back(c);
  for (std::size_t step = 0; step < max_steps; ++step) {
    std::uint64_t total = 0;
    for (const auto& t : r.broadcasts()) total += c[t.source];
    if (total == 0) break;
    std::uint64_t pick = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
    const Transition* chosen = nullptr;
    for (const auto& t : r.broadcasts()) {
      if (pick < c[t.source]) {
        chosen = &t;
        break;
      }
      pick -= c[t.source];
    }
    Configuration next = c;
    next[chosen->source] -= 1;
    next[chosen->target] += 1;
    for (std::size_t s = 0; s < c.dimension(); ++s) {
      const auto& targets = r.receive_targets(StateId{static_cast<std::uint32_t>(s)}, chosen->letter);
      if (targets.empty()) continue;
      const Count agents = c[s] - (s == chosen->source.index ? 1 : 0);
      for (Count i = 0; i < agents; ++i) {
        if (!coin(rng)) continue;
        const auto dst = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
        next[s] -= 1;
        next[dst] += 1;
      }
    }
    c = std::move(next);
    sim.trace.push_back(c);
  }
  if (p.is_consensus(c, 0))
    sim.verdict = 0;
  else if (p.is_consensus(c, 1))
    sim.verdict = 1;
  return sim;
}

namespace examples {

Protocol at_least_three() {
  Protocol p = at_least_three_mutated();
  p.rbn.add_receive("q1", "b", "q3");
  return p;
}

Protocol at_least_three_mutated() {
  Rbn r = three_state_rbn();
  r.add_broadcast("q3", "b", "q3");
  return Protocol{std::move(r), {StateId{0}}, {0, 0, 1}};
}

PredicateSpec at_least_three_spec() {
  return {CountingConstraint(Cube({0}, {2})), CountingConstraint(Cube({3}, {kInfinity}))};
}

}  // namespace examples

}  // namespace rbn
