#include <doctest.h>

#include <algorithm>

#include "rbn/semantics.hpp"
#include "rbn/symbolic.hpp"
#include "support.hpp"

using namespace rbn;

namespace {

constexpr Bound inf = kInfinity;

// Every (v, S) with |v| = size over `dim` states.
std::vector<SymbolicConfiguration> all_nodes(std::size_t dim, std::uint64_t size) {
  std::vector<SymbolicConfiguration> out;
  for (const auto& v : configurations_of_size(dim, size))
    for (StateSet s = 0; s < (StateSet{1} << dim); ++s) out.push_back({v, s});
  return out;
}

std::vector<LabelledSuccessor> brute_successors(const Rbn& r, const SymbolicConfiguration& from) {
  std::vector<LabelledSuccessor> out;
  for (std::uint32_t a = 0; a < r.letter_count(); ++a)
    for (const auto& to : all_nodes(r.state_count(), from.concrete.size()))
      if (testing::naive_edge(r, from, Letter{a}, to)) out.push_back({Letter{a}, to});
  return out;
}

SymbolicPath random_walk(const Rbn& r, std::size_t k, SymbolicConfiguration start, std::size_t len,
                         std::mt19937_64& rng) {
  SymbolicPath p{{start}, {}};
  for (std::size_t i = 0; i < len; ++i) {
    const auto next = symb_successors(r, k, p.nodes.back());
    if (next.empty()) break;
    const auto& pick = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
    p.nodes.push_back(pick.target);
    p.letters.push_back(pick.letter);
  }
  return p;
}

}  // namespace

TEST_CASE("index-0 successors of the three-state network") {
  const auto r = examples::three_state_rbn();
  const auto a = r.letter("a");
  const SymbolicConfiguration q1{r.empty_config(), state_set(r, {"q1"})};
  const std::vector<LabelledSuccessor> expected{{a, {r.empty_config(), state_set(r, {"q1"})}},
                                                {a, {r.empty_config(), state_set(r, {"q1", "q2"})}}};
  CHECK(symb_successors(r, 0, q1) == expected);
  CHECK(symb_successors(r, 0, {r.empty_config(), state_set(r, {"q3"})}).empty());
  CHECK(symb_successors(r, 0, {r.empty_config(), 0}).empty());
}

TEST_CASE("pruned successors equal the naive and brute-force enumerations") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto r = testing::random_rbn(seed * 7 + 1, 2 + seed % 3, 1 + seed % 2, 0.3);
    for (std::uint64_t size = 0; size <= 2; ++size)
      for (const auto& theta : all_nodes(r.state_count(), size)) {
        const auto fast = symb_successors(r, size, theta);
        CHECK(fast == symb_successors_naive(r, size, theta));
        CHECK(fast == brute_successors(r, theta));
        for (const auto& s : fast) {
          CHECK(s.target.concrete.size() == theta.concrete.size());
          CHECK(is_symb_edge(r, size, theta, s.letter, s.target));
        }
      }
  }
}

TEST_CASE("empty support forbids support changes") {
  const auto r = testing::random_rbn(3, 3, 2, 0.5);
  for (const auto& theta : all_nodes(3, 2))
    if (theta.support == 0)
      for (const auto& s : symb_successors(r, 2, theta)) CHECK(s.target.support == 0);
}

TEST_CASE("monotonicity of symbolic edges") {
  std::mt19937_64 rng(99);
  std::size_t cases = 0;
  for (std::uint64_t seed = 0; cases < 600; ++seed) {
    const auto r = testing::random_rbn(seed + 500, 3 + seed % 2, 2, 0.3);
    const auto n = r.state_count();
    for (const auto& theta : all_nodes(n, seed % 3)) {
      const auto succ = symb_successors(r, theta.concrete.size(), theta);
      if (succ.empty()) continue;
      const auto& e = succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)];
      const StateSet any = std::uniform_int_distribution<StateSet>(0, (StateSet{1} << n) - 1)(rng);
      const StateSet sub = any & theta.support;
      const auto k = theta.concrete.size();
      CHECK(is_symb_edge(r, k, theta, e.letter, {e.target.concrete, e.target.support | sub}));
      CHECK(is_symb_edge(r, k, {theta.concrete, theta.support | any}, e.letter, {e.target.concrete, e.target.support | any}));
      ++cases;
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("support membership") {
  const auto r = examples::three_state_rbn();
  const auto s1 = state_set(r, {"q1"});
  CHECK(support_member({r.empty_config(), s1}, 0, Configuration{5, 0, 0}));
  CHECK_FALSE(support_member({r.empty_config(), s1}, 0, Configuration{1, 1, 0}));
  const SymbolicConfiguration t{Configuration{0, 1, 0}, s1};
  CHECK(support_member(t, 2, Configuration{2, 1, 0}));
  CHECK_FALSE(support_member(t, 2, Configuration{1, 1, 0}));
}

TEST_CASE("lift_step examples") {
  const auto r = examples::three_state_rbn();
  const auto a = r.letter("a");
  const auto q1 = r.state("q1"), q2 = r.state("q2");
  const Step recv{{q1, Action::Broadcast, a, q1}, {{{q1, Action::Receive, a, q2}, 1}}};
  CHECK(lift_step(r, {r.empty_config(), state_set(r, {"q1"})}, Configuration{3, 0, 0}, recv) ==
        SymbolicConfiguration{r.empty_config(), state_set(r, {"q1", "q2"})});
  const Step alone{{q1, Action::Broadcast, a, q1}, {}};
  const SymbolicConfiguration tracked{Configuration{1, 0, 0}, state_set(r, {"q1"})};
  CHECK(lift_step(r, tracked, Configuration{3, 0, 0}, alone) == tracked);
  const SymbolicConfiguration pinned{Configuration{2, 0, 0}, 0};
  CHECK(lift_step(r, pinned, Configuration{2, 0, 0}, alone) == pinned);
}

TEST_CASE("lift_step yields edges whose targets contain the successor") {
  std::size_t cases = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto r = seed == 0 ? examples::three_state_rbn() : testing::random_rbn(seed + 40, 3, 2, 0.3);
    const auto n = r.state_count();
    for (const auto& c : testing::all_up_to(n, 4))
      for (std::uint64_t k = 0; k <= 2; ++k)
        for (const auto& theta : all_nodes(n, k)) {
          if (!support_member(theta, 0, c)) continue;
          for_each_step(r, c, [&](const Step& s, const Configuration& next) {
            const auto lifted = lift_step(r, theta, c, s);
            CHECK(support_member(lifted, 0, next));
            CHECK(is_symb_edge(r, k, theta, s.broadcast.letter, lifted));
            ++cases;
          });
        }
  }
  CHECK(cases >= 500);
}

TEST_CASE("normal form repair") {
  const auto r = examples::three_state_rbn();
  const auto a = r.letter("a"), b = r.letter("b");
  const auto e = r.empty_config();
  const SymbolicPath bad{{{e, state_set(r, {"q1", "q2"})}, {e, state_set(r, {"q1"})}, {e, state_set(r, {"q1", "q2"})}},
                         {b, a}};
  REQUIRE(is_valid_path(r, 0, bad));
  CHECK(count_bad_pairs(bad) == 1);
  const auto fixed = normalize_path(r, 0, bad);
  CHECK(is_valid_path(r, 0, fixed));
  CHECK(count_bad_pairs(fixed) == 0);
  CHECK(fixed.nodes.front() == bad.nodes.front());
  CHECK(fixed.nodes.back() == bad.nodes.back());
  CHECK(fixed.nodes.size() == bad.nodes.size());
  for (const auto& node : fixed.nodes) CHECK(contains(node.support, r.state("q2").index));

  const SymbolicPath single{{{e, state_set(r, {"q1"})}}, {}};
  const auto same = normalize_path(r, 0, single);
  CHECK(same.nodes == single.nodes);
  const SymbolicPath nf{{{e, state_set(r, {"q1"})}, {e, state_set(r, {"q1", "q2"})}}, {a}};
  CHECK(normalize_path(r, 0, nf).nodes == nf.nodes);

  const SymbolicPath broken{{{e, state_set(r, {"q3"})}, {e, state_set(r, {"q1"})}}, {a}};
  CHECK_THROWS(normalize_path(r, 0, broken));
}

TEST_CASE("normalize_path on random walks") {
  std::mt19937_64 rng(4242);
  std::size_t cases = 0, repaired = 0;
  for (std::uint64_t seed = 0; cases < 600; ++seed) {
    const auto r = testing::random_rbn(seed + 900, 3 + seed % 2, 2, 0.35);
    const auto n = r.state_count();
    const std::size_t k = seed % 2;
    const auto nodes = all_nodes(n, k);
    const auto start = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
    const auto p = random_walk(r, k, start, 1 + seed % 7, rng);
    const auto q = normalize_path(r, k, p);
    CHECK(is_valid_path(r, k, q));
    CHECK(count_bad_pairs(q) == 0);
    CHECK(q.nodes.front() == p.nodes.front());
    CHECK(q.nodes.back() == p.nodes.back());
    CHECK(q.nodes.size() == p.nodes.size());
    CHECK(q.letters.size() == p.letters.size());
    repaired += count_bad_pairs(p) > 0;
    ++cases;
  }
  CHECK(repaired > 0);
}

TEST_CASE("refinement bound arithmetic") {
  CHECK(refinement_bound(0, 3) == 1);
  CHECK(refinement_bound(0, 9) == 1);
  CHECK(refinement_bound(2, 3) == 32769);
  CHECK(refinement_bound(1, 1) == 9);
  CHECK(refinement_bound(3, 10) > boost::multiprecision::cpp_int(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("cubes and symbolic configurations") {
  const auto r = examples::three_state_rbn();
  CHECK(cube_of({r.empty_config(), state_set(r, {"q1"})}) == Cube({0, 0, 0}, {inf, 0, 0}));
  CHECK(cube_of({Configuration{0, 1, 0}, 0}) == Cube({0, 1, 0}, {0, 1, 0}));
  CHECK(symb_of_cube(Cube({0, 0, 0}, {inf, 0, 0})) ==
        std::vector<SymbolicConfiguration>{{r.empty_config(), state_set(r, {"q1"})}});
  const auto many = symb_of_cube(Cube({1, 0, 0}, {inf, 2, 0}));
  CHECK(many.size() == 3);
  for (Count j = 0; j <= 2; ++j)
    CHECK(std::find(many.begin(), many.end(), SymbolicConfiguration{Configuration{1, j, 0}, state_set(r, {"q1"})}) !=
          many.end());
  CHECK(symb_of_cube(Cube({2, 0, 0}, {1, 0, 0})).empty());

  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    const auto cube = testing::random_cube(rng, 3, 3);
    const auto thetas = symb_of_cube(cube);
    for (const auto& t : thetas) CHECK(t.concrete.size() <= 2 * norm(cube));
    for (const auto& c : testing::all_up_to(3, 4)) {
      bool covered = false;
      for (const auto& t : thetas) covered = covered || support_member(t, 0, c);
      CHECK(covered == cube.contains(c));
    }
  }
  for (const auto& t : all_nodes(3, 2))
    for (const auto& c : testing::all_up_to(3, 4)) CHECK(cube_member(cube_of(t), c) == support_member(t, 0, c));
}

TEST_CASE("symbolic reachability and paths") {
  const auto r = examples::three_state_rbn();
  const auto e = r.empty_config();
  const SymbolicConfiguration start{e, state_set(r, {"q1"})};
  const auto reach = symb_reachable(r, 0, {start});
  CHECK(std::find(reach.begin(), reach.end(), start) != reach.end());
  CHECK(std::find(reach.begin(), reach.end(), SymbolicConfiguration{e, state_set(r, {"q1", "q2"})}) != reach.end());

  std::vector<SymbolicConfiguration> expected{start};
  for (std::size_t i = 0; i < expected.size(); ++i)
    for (const auto& s : brute_successors(r, expected[i]))
      if (std::find(expected.begin(), expected.end(), s.target) == expected.end()) expected.push_back(s.target);
  std::sort(expected.begin(), expected.end());
  auto got = reach;
  std::sort(got.begin(), got.end());
  CHECK(got == expected);

  const SymbolicConfiguration q3{e, state_set(r, {"q3"})};
  CHECK(symb_reachable(r, 0, {q3}) == std::vector<SymbolicConfiguration>{q3});

  const auto path = symb_path(r, 0, start, {e, state_set(r, {"q1", "q3"})});
  REQUIRE(path);
  CHECK(is_valid_path(r, 0, *path));
  CHECK(path->nodes.size() == 3);
  CHECK_FALSE(symb_path(r, 0, q3, start));
}

TEST_CASE("materialized graph and DOT export") {
  const auto r = examples::three_state_rbn();
  const auto g = materialize(r, 0);
  CHECK(g.nodes.size() == 8);
  const auto e = r.empty_config();
  const auto a = r.letter("a");
  const SymbolicConfiguration q1{e, state_set(r, {"q1"})};
  CHECK(std::find(g.edges.begin(), g.edges.end(), SymbolicEdge{q1, a, q1}) != g.edges.end());
  for (const auto& edge : g.edges) CHECK(edge.source.support != state_set(r, {"q3"}));
  const auto dot = to_dot(r, g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("{q1,q2}") != std::string::npos);
  CHECK(to_string(r, SymbolicConfiguration{Configuration{1, 0, 0}, state_set(r, {"q1", "q2"})}) == "[[q1]] | {q1,q2}");
}
