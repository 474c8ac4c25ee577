#pragma once

// Seeded generators and deliberately naive reference enumerators shared by
// the test binaries.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rbn/asms.hpp"
#include "rbn/model.hpp"
#include "rbn/symbolic.hpp"

namespace rbn::testing {

inline Rbn random_rbn(std::uint64_t seed, std::size_t states, std::size_t letters, double density = 0.25) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> qs, as;
  for (std::size_t i = 0; i < states; ++i) qs.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < letters; ++i) as.push_back("l" + std::to_string(i));
  Rbn r(qs, as);
  std::bernoulli_distribution coin(density);
  for (std::uint32_t p = 0; p < states; ++p)
    for (std::uint32_t a = 0; a < letters; ++a)
      for (std::uint32_t q = 0; q < states; ++q) {
        if (coin(rng)) r.add_broadcast(StateId{p}, Letter{a}, StateId{q});
        if (coin(rng)) r.add_receive(StateId{p}, Letter{a}, StateId{q});
      }
  if (r.broadcasts().empty()) r.add_broadcast(StateId{0}, Letter{0}, StateId{static_cast<std::uint32_t>(states - 1)});
  return r;
}

inline Cube random_cube(std::mt19937_64& rng, std::size_t dim, Bound max_bound) {
  std::uniform_int_distribution<Bound> val(0, max_bound);
  std::bernoulli_distribution inf(0.35);
  Cube c{std::vector<Bound>(dim), std::vector<Bound>(dim)};
  for (std::size_t q = 0; q < dim; ++q) {
    Bound a = val(rng), b = val(rng);
    if (a > b) std::swap(a, b);
    c.lower[q] = a;
    c.upper[q] = inf(rng) ? kInfinity : b;
  }
  return c;
}

inline Configuration random_configuration(std::mt19937_64& rng, std::size_t dim, std::uint64_t size) {
  Configuration c(dim);
  std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
  for (std::uint64_t i = 0; i < size; ++i) c[pick(rng)] += 1;
  return c;
}

/// Agent-by-agent successor enumeration: pick the broadcasting agent, then let
/// every other agent either ignore the message or take one of its receives.
inline std::vector<Configuration> naive_successors(const Rbn& r, const Configuration& c) {
  std::vector<std::size_t> agents;
  for (std::size_t q = 0; q < c.dimension(); ++q)
    for (Count i = 0; i < c[q]; ++i) agents.push_back(q);
  std::set<Configuration> out;
  for (std::size_t b = 0; b < agents.size(); ++b)
    for (const auto& t : r.transitions()) {
      if (t.kind != Action::Broadcast || t.source.index != agents[b]) continue;
      std::vector<std::vector<std::size_t>> choices;  // per agent: possible end states
      for (std::size_t i = 0; i < agents.size(); ++i) {
        if (i == b) {
          choices.push_back({t.target.index});
          continue;
        }
        std::vector<std::size_t> opts{agents[i]};
        for (const auto& u : r.transitions())
          if (u.kind == Action::Receive && u.letter == t.letter && u.source.index == agents[i])
            opts.push_back(u.target.index);
        choices.push_back(opts);
      }
      std::vector<std::size_t> idx(agents.size(), 0);
      while (true) {
        Configuration next(c.dimension());
        for (std::size_t i = 0; i < agents.size(); ++i) next[choices[i][idx[i]]] += 1;
        out.insert(next);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
  return {out.begin(), out.end()};
}

/// Direct transcription of the two symbolic edge rules, over every
/// (v', S') of the right size.
inline bool naive_edge(const Rbn& r, const SymbolicConfiguration& from, Letter a, const SymbolicConfiguration& to) {
  const auto n = r.state_count();
  auto has = [&](std::size_t x, std::size_t y) {
    for (const auto& t : r.transitions())
      if (t.kind == Action::Receive && t.letter == a && t.source.index == x && t.target.index == y) return true;
    return false;
  };
  auto justified = [&](std::size_t skip1, std::size_t skip2) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s == skip1 || s == skip2) continue;
      const bool in = contains(from.support, s), out = contains(to.support, s);
      if (out && !in) {
        bool ok = false;
        for (std::size_t p = 0; p < n; ++p) ok = ok || (contains(from.support, p) && has(p, s));
        if (!ok) return false;
      }
      if (in && !out) {
        bool ok = false;
        for (std::size_t p = 0; p < n; ++p) ok = ok || (contains(to.support, p) && has(s, p));
        if (!ok) return false;
      }
    }
    return true;
  };
  // concrete parts reachable by receiving from `pool`: agent by agent
  auto concrete_results = [&](const Configuration& pool) {
    std::vector<std::size_t> agents;
    for (std::size_t q = 0; q < n; ++q)
      for (Count i = 0; i < pool[q]; ++i) agents.push_back(q);
    std::set<Configuration> res;
    std::vector<std::vector<std::size_t>> choices;
    for (auto q : agents) {
      std::vector<std::size_t> opts{q};
      for (std::size_t y = 0; y < n; ++y)
        if (has(q, y)) opts.push_back(y);
      choices.push_back(opts);
    }
    std::vector<std::size_t> idx(agents.size(), 0);
    while (true) {
      Configuration c(n);
      for (std::size_t i = 0; i < agents.size(); ++i) c[choices[i][idx[i]]] += 1;
      res.insert(c);
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    return res;
  };
  for (const auto& t : r.transitions()) {
    if (t.kind != Action::Broadcast || t.letter != a) continue;
    const auto q = t.source.index, q2 = t.target.index;
    if (from.concrete[q] >= 1 && justified(n, n)) {
      Configuration pool = from.concrete;
      pool[q] -= 1;
      for (auto c : concrete_results(pool)) {
        c[q2] += 1;
        if (c == to.concrete) return true;
      }
    }
    if (contains(from.support, q) && contains(to.support, q2) && justified(q, q2))
      if (concrete_results(from.concrete).contains(to.concrete)) return true;
  }
  return false;
}

inline std::vector<AsmsConfiguration> naive_asms_successors(const Asms& a, const AsmsConfiguration& c) {
  std::set<AsmsConfiguration> out;
  for (std::size_t q = 0; q < c.agents.dimension(); ++q) {
    if (c.agents[q] == 0) continue;
    for (const auto& t : a.transitions) {
      if (t.source.index != q) continue;
      const bool enabled = t.op == RegisterOp::Write || t.value == c.reg;
      if (!enabled) continue;
      AsmsConfiguration next = c;
      next.agents[q] -= 1;
      next.agents[t.target] += 1;
      next.reg = t.value;
      out.insert(next);
    }
  }
  return {out.begin(), out.end()};
}

inline std::vector<Configuration> naive_io_successors(const IoNet& net, const Configuration& c) {
  std::vector<std::size_t> agents;
  for (std::size_t q = 0; q < c.dimension(); ++q)
    for (Count i = 0; i < c[q]; ++i) agents.push_back(q);
  std::set<Configuration> out;
  for (std::size_t i = 0; i < agents.size(); ++i)
    for (std::size_t j = 0; j < agents.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : net.transitions)
        if (t.source.index == agents[i] && t.observed.index == agents[j]) {
          Configuration next = c;
          next[t.source] -= 1;
          next[t.target] += 1;
          out.insert(next);
        }
    }
  return {out.begin(), out.end()};
}

inline std::vector<Configuration> all_up_to(std::size_t dim, std::uint64_t max_size) {
  std::vector<Configuration> out;
  for (std::uint64_t n = 0; n <= max_size; ++n) {
    auto level = configurations_of_size(dim, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace rbn::testing
