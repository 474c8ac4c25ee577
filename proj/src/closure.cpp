#include "rbn/closure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace rbn {

namespace {

StateSet support_of(const Configuration& m) {
  StateSet s = 0;
  for (std::size_t q = 0; q < m.dimension(); ++q)
    if (m[q] > 0) s = with(s, q);
  return s;
}

// Positive compositions of `total` into `parts` parts.
void compositions(Count total, std::size_t parts, std::vector<Count>& cur,
                  std::vector<std::vector<Count>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (Count x = 1; x + (parts - 1) <= total; ++x) {
    cur.push_back(x);
    compositions(total - x, parts - 1, cur, out);
    cur.pop_back();
  }
}

using Contribution = std::vector<std::pair<std::size_t, Count>>;

// Ways the n abstract agents at `s` may spread on letter `a`: a nonempty set
// of destinations, each receiving at least one agent. With n = 0 the empty
// spread is also allowed; otherwise duplicates of abstract agents fill groups.
std::vector<Contribution> spreads(const Rbn& r, Letter a, std::size_t s, Count n, bool may_be_empty) {
  std::vector<std::size_t> dest{s};
  for (auto t : r.receive_targets(StateId{static_cast<std::uint32_t>(s)}, a)) dest.push_back(t.index);
  std::sort(dest.begin(), dest.end());
  dest.erase(std::unique(dest.begin(), dest.end()), dest.end());
  std::vector<Contribution> out;
  if (may_be_empty) out.push_back({});
  const std::size_t d = dest.size();
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::vector<std::size_t> groups;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1u) groups.push_back(dest[i]);
    const Count c = std::max<Count>(n, static_cast<Count>(groups.size()));
    std::vector<std::vector<Count>> comps;
    std::vector<Count> cur;
    compositions(c, groups.size(), cur, comps);
    for (const auto& comp : comps) {
      Contribution k;
      for (std::size_t i = 0; i < groups.size(); ++i) k.push_back({groups[i], comp[i]});
      out.push_back(std::move(k));
    }
  }
  return out;
}

struct PatternHash {
  std::size_t operator()(const SymbolicConfiguration& t) const noexcept { return SymbolicConfigurationHash{}(t); }
};

class Saturation {
 public:
  Saturation(const Rbn& r, std::size_t budget) : r_(r), budget_(budget) {}

  void insert(const Configuration& v, const Configuration& m) {
    SymbolicConfiguration key{v, support_of(m)};
    auto& chain = antichains_[key];
    for (const auto& x : chain)
      if (m.covers(x)) return;
    std::erase_if(chain, [&](const Configuration& x) { return x.covers(m); });
    chain.push_back(m);
    if (++inserted_ > budget_) throw BudgetExceeded("post* saturation", budget_);
    work_.push_back({v, m});
  }

  void run() {
    while (!work_.empty()) {
      auto [v, m] = std::move(work_.front());
      work_.pop_front();
      const auto& chain = antichains_.at({v, support_of(m)});
      if (std::find(chain.begin(), chain.end(), m) == chain.end()) continue;  // superseded
      expand(v, m);
    }
  }

  std::vector<ThetaOrderWitness> result() const {
    std::vector<ThetaOrderWitness> out;
    for (const auto& [key, chain] : antichains_) {
      ThetaOrderWitness w{key, {}, true};
      for (const auto& m : chain) w.minimal_elements.push_back(key.concrete + m);
      std::sort(w.minimal_elements.begin(), w.minimal_elements.end());
      out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.theta < b.theta; });
    return out;
  }

 private:
  void expand(const Configuration& v, const Configuration& m) {
    const auto n = r_.state_count();
    for (const auto& t : r_.broadcasts()) {
      const auto q = t.source.index, q2 = t.target.index;
      if (v[q] >= 1) {
        Configuration pool = v;
        pool[q] -= 1;
        const auto abstract = spread_abstract(m, t.letter, n, Configuration(n));
        for_each_unique_reception(t.letter, pool, [&](Configuration v2) {
          v2[q2] += 1;
          for (const auto& m2 : abstract) insert(v2, m2);
        });
      }
      if (m[q] >= 1) {
        Configuration rest = m;
        rest[q] -= 1;
        Configuration base(n);
        base[q2] += 1;
        const auto abstract = spread_abstract(rest, t.letter, q, base);
        for_each_unique_reception(t.letter, v, [&](const Configuration& v2) {
          for (const auto& m2 : abstract) insert(v2, m2);
        });
      }
    }
  }

  template <class F>
  void for_each_unique_reception(Letter a, const Configuration& pool, F&& visit) {
    std::unordered_set<Configuration, ConfigurationHash> seen;
    for_each_reception(r_, a, pool, [&](const Configuration& w) {
      if (seen.insert(w).second) visit(w);
    });
  }

  // Minimal abstract outcomes of a broadcast on `a`, per support.
  // `bcast_state` marks the state whose abstract broadcaster already left
  // (so it may end up with no abstract agent); n = none.
  std::vector<Configuration> spread_abstract(const Configuration& m, Letter a, std::size_t bcast_state,
                                             const Configuration& base) {
    const auto n = r_.state_count();
    std::unordered_set<Configuration, ConfigurationHash> partial{base};
    for (std::size_t s = 0; s < n; ++s) {
      if (m[s] == 0 && s != bcast_state) continue;
      std::unordered_set<Configuration, ConfigurationHash> next;
      for (const auto& contrib : spreads(r_, a, s, m[s], m[s] == 0))
        for (auto p : partial) {
          for (auto [d, c] : contrib) p[d] += c;
          next.insert(std::move(p));
        }
      partial = std::move(next);
    }
    std::unordered_map<StateSet, std::vector<Configuration>> by_support;
    for (const auto& p : partial) by_support[support_of(p)].push_back(p);
    std::vector<Configuration> out;
    for (auto& [s, group] : by_support) {
      std::sort(group.begin(), group.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
      const auto first = out.size();
      for (const auto& g : group) {
        bool dominated = false;
        for (std::size_t i = first; i < out.size() && !dominated; ++i) dominated = g.covers(out[i]);
        if (!dominated) out.push_back(g);
      }
    }
    return out;
  }

  const Rbn& r_;
  std::size_t budget_;
  std::size_t inserted_ = 0;
  std::unordered_map<SymbolicConfiguration, std::vector<Configuration>, PatternHash> antichains_;
  std::deque<std::pair<Configuration, Configuration>> work_;
};

}  // namespace

Rbn product_rbn(const Rbn& r) {
  std::vector<std::string> names;
  for (const auto& s : r.state_names()) names.push_back(s + "#c");
  for (const auto& s : r.state_names()) names.push_back(s + "#a");
  Rbn p(names, r.letter_names());
  const auto n = static_cast<std::uint32_t>(r.state_count());
  for (const auto& t : r.transitions()) {
    p.add_transition(t);
    p.add_transition({StateId{t.source.index + n}, t.kind, t.letter, StateId{t.target.index + n}});
  }
  return p;
}

std::vector<SymbolicConfiguration> expanded_roots(const Cube& cube) {
  std::vector<SymbolicConfiguration> out;
  for (const auto& theta : symb_of_cube(cube))
    for (StateSet s0 = theta.support;; s0 = (s0 - 1) & theta.support) {
      out.push_back({theta.concrete, s0});
      if (s0 == 0) break;
    }
  std::sort(out.begin(), out.end());
  return out;
}

CountingConstraint product_initial(const Cube& cube) {
  const auto n = cube.dimension();
  CountingConstraint out(2 * n);
  for (const auto& root : expanded_roots(cube)) {
    Cube c(std::vector<Bound>(2 * n, 0), std::vector<Bound>(2 * n, 0));
    for (std::size_t q = 0; q < n; ++q) {
      c.lower[q] = c.upper[q] = root.concrete[q];
      if (contains(root.support, q)) {
        c.lower[n + q] = 1;
        c.upper[n + q] = kInfinity;
      }
    }
    out.add(std::move(c));
  }
  return out;
}

std::vector<ThetaOrderWitness> saturate(const Rbn& r, const Cube& cube, std::size_t budget) {
  if (cube.dimension() != r.state_count()) throw ModelError("cube dimension mismatch");
  if (r.state_count() > 64) throw ModelError("symbolic analysis supports at most 64 states");
  Saturation sat(r, budget);
  const auto n = r.state_count();
  for (const auto& root : expanded_roots(cube)) {
    Configuration m(n);
    for (std::size_t q = 0; q < n; ++q)
      if (contains(root.support, q)) m[q] = 1;
    sat.insert(root.concrete, m);
  }
  sat.run();
  return sat.result();
}

ThetaOrderWitness minimal_antichain(const Rbn& r, const Cube& cube, const SymbolicConfiguration& theta,
                                    std::uint64_t n, std::size_t budget) {
  const auto dim = r.state_count();
  ThetaOrderWitness w{theta, {}, false};
  w.bound_verified = refinement_bound(2 * norm(cube), dim) <= n;
  std::vector<std::size_t> support;
  for (std::size_t q = 0; q < dim; ++q)
    if (contains(theta.support, q)) support.push_back(q);
  if (!support.empty() && n == 0) return w;

  PoststarOracle oracle(product_rbn(r), product_initial(cube), budget);
  auto lift = [&](const Configuration& excess) {
    Configuration p(2 * dim);
    for (std::size_t q = 0; q < dim; ++q) {
      p[q] = theta.concrete[q];
      p[dim + q] = excess[q];
    }
    return p;
  };

  std::vector<Configuration> found;  // excess vectors
  const std::uint64_t k = support.size();
  for (std::uint64_t level = k; level <= k * n; ++level) {
    Configuration excess(dim);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
      if (i + 1 >= support.size()) {
        if (support.empty()) {
          if (left != 0) return;
        } else {
          if (left < 1 || left > n) return;
          excess[support[i]] = static_cast<Count>(left);
        }
        for (const auto& f : found)
          if (excess.covers(f)) return;
        if (oracle.contains(lift(excess))) found.push_back(excess);
        return;
      }
      for (std::uint64_t x = 1; x <= n && x + (support.size() - i - 1) <= left; ++x) {
        excess[support[i]] = static_cast<Count>(x);
        rec(i + 1, left - x);
      }
    };
    rec(0, level);
    if (support.empty()) break;
  }
  for (const auto& f : found) w.minimal_elements.push_back(theta.concrete + f);
  std::sort(w.minimal_elements.begin(), w.minimal_elements.end());
  return w;
}

CountingConstraint poststar(const Rbn& r, const CountingConstraint& a, std::size_t budget) {
  if (a.dimension() != r.state_count()) throw ModelError("constraint dimension mismatch");
  CountingConstraint out(a.dimension());
  for (const auto& cube : a.cubes()) {
    if (cube.is_empty()) continue;
    for (const auto& w : saturate(r, cube, budget))
      for (const auto& c : w.minimal_elements) out.add(cube_of({c, w.theta.support}));
  }
  return simplify(out);
}

CountingConstraint prestar(const Rbn& r, const CountingConstraint& a, std::size_t budget) {
  return poststar(reverse(r), a, budget);
}

boost::multiprecision::cpp_int poststar_norm_bound(const Cube& cube) {
  const auto k = 2 * norm(cube);
  return boost::multiprecision::cpp_int(k) + cube.dimension() * refinement_bound(k, cube.dimension());
}

}  // namespace rbn
