#include "rbn/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rbn {

namespace {

void check_states(const Rbn& r) {
  if (r.state_count() > 64) throw ModelError("symbolic analysis supports at most 64 states");
}

StateSet bit(std::size_t q) { return StateSet{1} << q; }

bool has_receive(const Rbn& r, std::size_t from, Letter a, std::size_t to) {
  const auto& t = r.receive_targets(StateId{static_cast<std::uint32_t>(from)}, a);
  return std::binary_search(t.begin(), t.end(), StateId{static_cast<std::uint32_t>(to)});
}

// Per-state justification of S -> S' on letter a, ignoring states in `exempt`.
bool justified(const Rbn& r, Letter a, StateSet s, StateSet s2, StateSet exempt) {
  const auto n = r.state_count();
  for (std::size_t x = 0; x < n; ++x) {
    if (contains(exempt, x)) continue;
    const bool before = contains(s, x), after = contains(s2, x);
    if (after && !before) {
      bool ok = false;
      for (std::size_t y = 0; y < n && !ok; ++y) ok = contains(s, y) && has_receive(r, y, a, x);
      if (!ok) return false;
    }
    if (before && !after) {
      bool ok = false;
      for (std::size_t y = 0; y < n && !ok; ++y) ok = contains(s2, y) && has_receive(r, x, a, y);
      if (!ok) return false;
    }
  }
  return true;
}

std::vector<StateSet> justified_sets(const Rbn& r, Letter a, StateSet s, StateSet exempt, StateSet forced) {
  StateSet candidates = s | exempt | forced;
  for (std::size_t p = 0; p < r.state_count(); ++p)
    if (contains(s, p))
      for (auto t : r.receive_targets(StateId{static_cast<std::uint32_t>(p)}, a)) candidates = with(candidates, t.index);
  const StateSet free = candidates & ~forced;
  std::vector<StateSet> out;
  for (StateSet sub = free;; sub = (sub - 1) & free) {
    const StateSet s2 = sub | forced;
    if (justified(r, a, s, s2, exempt)) out.push_back(s2);
    if (sub == 0) break;
  }
  return out;
}

void sort_unique(std::vector<LabelledSuccessor>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// All results of letting agents of `pool` receive `a`, enumerated per
// receive transition (not per state) as an independent reference.
std::vector<Configuration> receptions_naive(const Rbn& r, Letter a, const Configuration& pool) {
  std::vector<Transition> rec;
  for (const auto& t : r.transitions())
    if (t.kind == Action::Receive && t.letter == a) rec.push_back(t);
  std::vector<Configuration> out;
  std::vector<Count> mult(rec.size(), 0);
  const Count cap = static_cast<Count>(pool.size());
  while (true) {
    Configuration used(pool.dimension()), result = pool;
    bool ok = true;
    for (std::size_t i = 0; i < rec.size(); ++i) used[rec[i].source] += mult[i];
    ok = pool.covers(used);
    if (ok) {
      for (std::size_t i = 0; i < rec.size(); ++i) {
        result[rec[i].source] -= mult[i];
        result[rec[i].target] += mult[i];
      }
      out.push_back(result);
    }
    std::size_t i = 0;
    while (i < rec.size() && mult[i] == cap) mult[i++] = 0;
    if (i == rec.size()) break;
    ++mult[i];
  }
  return out;
}

}  // namespace

StateSet state_set(const Rbn& r, std::initializer_list<std::string_view> names) {
  StateSet s = 0;
  for (auto n : names) s = with(s, r.state(n).index);
  return s;
}

std::vector<LabelledSuccessor> symb_successors(const Rbn& r, std::size_t k, const SymbolicConfiguration& theta) {
  check_states(r);
  const auto& v = theta.concrete;
  if (v.dimension() != r.state_count()) throw ModelError("configuration dimension mismatch");
  if (v.size() > k) throw ModelError("concrete part exceeds the graph index");
  const StateSet s = theta.support;
  std::vector<LabelledSuccessor> out;
  for (const auto& t : r.broadcasts()) {
    const auto q = t.source.index, q2 = t.target.index;
    if (v[q] >= 1) {
      Configuration pool = v;
      pool[q] -= 1;
      const auto sets = justified_sets(r, t.letter, s, 0, 0);
      for_each_reception(r, t.letter, pool, [&](const Configuration& w) {
        Configuration v2 = w;
        v2[q2] += 1;
        for (auto s2 : sets) out.push_back({t.letter, {v2, s2}});
      });
    }
    if (contains(s, q)) {
      const auto sets = justified_sets(r, t.letter, s, bit(q) | bit(q2), bit(q2));
      for_each_reception(r, t.letter, v, [&](const Configuration& v2) {
        for (auto s2 : sets) out.push_back({t.letter, {v2, s2}});
      });
    }
  }
  sort_unique(out);
  return out;
}

bool is_symb_edge(const Rbn& r, std::size_t k, const SymbolicConfiguration& from, Letter a,
                  const SymbolicConfiguration& to) {
  check_states(r);
  const auto& v = from.concrete;
  if (v.size() > k || to.concrete.size() > k) return false;
  for (const auto& t : r.broadcasts()) {
    if (t.letter != a) continue;
    const auto q = t.source.index, q2 = t.target.index;
    if (v[q] >= 1 && justified(r, a, from.support, to.support, 0)) {
      Configuration pool = v;
      pool[q] -= 1;
      for (auto& w : receptions_naive(r, a, pool)) {
        w[q2] += 1;
        if (w == to.concrete) return true;
      }
    }
    if (contains(from.support, q) && contains(to.support, q2) &&
        justified(r, a, from.support, to.support, bit(q) | bit(q2))) {
      for (const auto& w : receptions_naive(r, a, v))
        if (w == to.concrete) return true;
    }
  }
  return false;
}

std::vector<LabelledSuccessor> symb_successors_naive(const Rbn& r, std::size_t k,
                                                     const SymbolicConfiguration& theta) {
  check_states(r);
  if (theta.concrete.size() > k) throw ModelError("concrete part exceeds the graph index");
  std::vector<LabelledSuccessor> out;
  const auto n = r.state_count();
  const auto targets = configurations_of_size(n, theta.concrete.size());
  for (std::uint32_t a = 0; a < r.letter_count(); ++a)
    for (StateSet s2 = 0; s2 < (StateSet{1} << n); ++s2)
      for (const auto& v2 : targets) {
        SymbolicConfiguration to{v2, s2};
        if (is_symb_edge(r, k, theta, Letter{a}, to)) out.push_back({Letter{a}, to});
      }
  sort_unique(out);
  return out;
}

std::vector<SymbolicConfiguration> symb_reachable(const Rbn& r, std::size_t k,
                                                  const std::vector<SymbolicConfiguration>& roots,
                                                  std::size_t budget) {
  std::unordered_set<SymbolicConfiguration, SymbolicConfigurationHash> seen;
  std::deque<SymbolicConfiguration> queue;
  for (const auto& t : roots)
    if (seen.insert(t).second) queue.push_back(t);
  while (!queue.empty()) {
    auto t = std::move(queue.front());
    queue.pop_front();
    for (auto& e : symb_successors(r, k, t))
      if (seen.insert(e.target).second) {
        if (seen.size() > budget) throw BudgetExceeded("symbolic reachability", budget);
        queue.push_back(std::move(e.target));
      }
  }
  std::vector<SymbolicConfiguration> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<SymbolicPath> symb_path(const Rbn& r, std::size_t k, const SymbolicConfiguration& from,
                                      const SymbolicConfiguration& to, std::size_t budget) {
  std::unordered_map<SymbolicConfiguration, std::pair<SymbolicConfiguration, Letter>, SymbolicConfigurationHash>
      parent;
  parent.emplace(from, std::pair{from, Letter{}});
  std::deque<SymbolicConfiguration> queue{from};
  while (!queue.empty()) {
    auto t = std::move(queue.front());
    queue.pop_front();
    if (t == to) {
      SymbolicPath p;
      auto cur = t;
      while (!(cur == from)) {
        const auto& [prev, a] = parent.at(cur);
        p.nodes.push_back(cur);
        p.letters.push_back(a);
        cur = prev;
      }
      p.nodes.push_back(from);
      std::reverse(p.nodes.begin(), p.nodes.end());
      std::reverse(p.letters.begin(), p.letters.end());
      return p;
    }
    for (auto& e : symb_successors(r, k, t))
      if (parent.emplace(e.target, std::pair{t, e.letter}).second) {
        if (parent.size() > budget) throw BudgetExceeded("symbolic path search", budget);
        queue.push_back(std::move(e.target));
      }
  }
  return std::nullopt;
}

bool support_member(const SymbolicConfiguration& theta, std::uint64_t n, const Configuration& c) {
  const auto& v = theta.concrete;
  if (v.dimension() != c.dimension()) throw ModelError("configuration dimension mismatch");
  for (std::size_t q = 0; q < v.dimension(); ++q) {
    if (contains(theta.support, q)) {
      if (c[q] < std::uint64_t{v[q]} + n) return false;
    } else if (c[q] != v[q]) {
      return false;
    }
  }
  return true;
}

SymbolicConfiguration lift_step(const Rbn& r, const SymbolicConfiguration& theta, const Configuration& c,
                                const Step& step) {
  check_states(r);
  if (!support_member(theta, 0, c)) throw ModelError("configuration is not in the support of the symbolic configuration");
  apply_step(r, c, step);  // validates the step
  Configuration excess = c - theta.concrete;
  Configuration v = theta.concrete;
  Configuration v_removed(v.dimension()), v_added(v.dimension());
  StateSet s2 = theta.support;
  const auto& b = step.broadcast;
  if (contains(theta.support, b.source.index) && excess[b.source] >= 1) {
    excess[b.source] -= 1;
    s2 = with(s2, b.target.index);
  } else {
    v_removed[b.source] += 1;
    v_added[b.target] += 1;
  }
  for (const auto& [t, n] : step.receives) {
    const Count abstract = std::min(n, excess[t.source]);
    excess[t.source] -= abstract;
    if (abstract > 0) s2 = with(s2, t.target.index);
    v_removed[t.source] += n - abstract;
    v_added[t.target] += n - abstract;
  }
  return {v - v_removed + v_added, s2};
}

bool is_valid_path(const Rbn& r, std::size_t k, const SymbolicPath& p) {
  if (p.nodes.empty() || p.letters.size() + 1 != p.nodes.size()) return false;
  for (std::size_t i = 0; i < p.letters.size(); ++i)
    if (!is_symb_edge(r, k, p.nodes[i], p.letters[i], p.nodes[i + 1])) return false;
  return true;
}

std::size_t count_bad_pairs(const SymbolicPath& p) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
    const StateSet dropped = p.nodes[i].support & ~p.nodes[i + 1].support;
    for (std::size_t j = i + 1; j < p.nodes.size(); ++j)
      if (dropped & p.nodes[j].support) ++bad;
  }
  return bad;
}

SymbolicPath normalize_path(const Rbn& r, std::size_t k, const SymbolicPath& p) {
  if (!is_valid_path(r, k, p)) throw ModelError("input is not a path of the symbolic graph");
  SymbolicPath out = p;
  auto& nodes = out.nodes;
  for (std::size_t m = 1; m < nodes.size(); ++m) {
    // the prefix up to m-1 is in normal form; repair pairs ending at m
    for (bool repaired = true; repaired;) {
      repaired = false;
      for (std::size_t w = 0; w < m; ++w) {
        const StateSet z = nodes[w].support & ~nodes[w + 1].support & nodes[m].support;
        if (!z) continue;
        for (std::size_t j = w + 1; j <= m; ++j) nodes[j].support |= z;
        repaired = true;
        break;
      }
    }
  }
  if (!is_valid_path(r, k, out)) throw std::logic_error("normal form repair produced an invalid path");
  return out;
}

boost::multiprecision::cpp_int refinement_bound(std::uint64_t k, std::uint64_t q_count) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::pow;
  return cpp_int(k) * pow(cpp_int(2 * k), static_cast<unsigned>(q_count)) *
             pow(cpp_int(q_count + 1), static_cast<unsigned>(q_count + 1)) +
         1;
}

Cube cube_of(const SymbolicConfiguration& theta) {
  const auto& v = theta.concrete;
  Cube c(std::vector<Bound>(v.counts().begin(), v.counts().end()),
         std::vector<Bound>(v.counts().begin(), v.counts().end()));
  for (std::size_t q = 0; q < v.dimension(); ++q)
    if (contains(theta.support, q)) c.upper[q] = kInfinity;
  return c;
}

std::vector<SymbolicConfiguration> symb_of_cube(const Cube& cube) {
  std::vector<SymbolicConfiguration> out;
  if (cube.is_empty()) return out;
  const auto n = cube.dimension();
  if (n > 64) throw ModelError("symbolic analysis supports at most 64 states");
  StateSet s = 0;
  Configuration v(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (cube.lower[q] > kMaxFiniteBound) throw ModelError("cube bound too large for symbolic analysis");
    v[q] = static_cast<Count>(cube.lower[q]);
    if (cube.upper[q] == kInfinity) s = with(s, q);
  }
  std::function<void(std::size_t)> rec = [&](std::size_t q) {
    if (q == n) {
      out.push_back({v, s});
      return;
    }
    if (contains(s, q)) return rec(q + 1);
    for (Bound x = cube.lower[q]; x <= cube.upper[q]; ++x) {
      v[q] = static_cast<Count>(x);
      rec(q + 1);
    }
    v[q] = static_cast<Count>(cube.lower[q]);
  };
  rec(0);
  return out;
}

SymbolicGraph materialize(const Rbn& r, std::size_t k, std::size_t budget) {
  check_states(r);
  const auto n = r.state_count();
  if (n >= 32) throw BudgetExceeded("symbolic graph materialization", budget);
  SymbolicGraph g;
  g.index = k;
  for (std::size_t size = 0; size <= k; ++size)
    for (const auto& v : configurations_of_size(n, size))
      for (StateSet s = 0; s < (StateSet{1} << n); ++s) {
        g.nodes.push_back({v, s});
        if (g.nodes.size() > budget) throw BudgetExceeded("symbolic graph materialization", budget);
      }
  std::sort(g.nodes.begin(), g.nodes.end());
  for (const auto& t : g.nodes)
    for (const auto& e : symb_successors(r, k, t)) g.edges.push_back({t, e.letter, e.target});
  return g;
}

std::string to_string(const Rbn& r, const SymbolicConfiguration& theta) {
  std::string s = to_string(r, theta.concrete) + " | {";
  bool first = true;
  for (std::size_t q = 0; q < r.state_count(); ++q)
    if (contains(theta.support, q)) {
      s += (first ? "" : ",") + r.state_names()[q];
      first = false;
    }
  return s + "}";
}

std::string to_dot(const Rbn& r, const SymbolicGraph& g) {
  std::ostringstream os;
  std::unordered_map<SymbolicConfiguration, std::size_t, SymbolicConfigurationHash> id;
  os << "digraph G" << g.index << " {\n";
  for (const auto& t : g.nodes) {
    const auto i = id.emplace(t, id.size()).first->second;
    os << "  n" << i << " [label=\"" << to_string(r, t) << "\"];\n";
  }
  for (const auto& e : g.edges)
    os << "  n" << id.at(e.source) << " -> n" << id.at(e.target) << " [label=\"" << r.name(e.letter) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace rbn
