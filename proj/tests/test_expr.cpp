#include <doctest.h>

#include "rbn/expr.hpp"
#include "rbn/semantics.hpp"
#include "support.hpp"

using namespace rbn;

namespace {

constexpr Bound inf = kInfinity;

// Membership by definition: post* and pre* quantify over same-size
// configurations connected by explicit reachability.
bool naive_member(const Rbn& r, const NiceExpr& e, const Configuration& c) {
  switch (e.kind()) {
    case NiceExpr::Kind::Atom:
      return e.constraint().contains(c);
    case NiceExpr::Kind::PostStar:
      for (const auto& d : configurations_of_size(c.dimension(), c.size()))
        if (naive_member(r, e.lhs(), d) && reachable(r, d, c)) return true;
      return false;
    case NiceExpr::Kind::PreStar:
      for (const auto& d : reachable_set(r, c))
        if (naive_member(r, e.lhs(), d)) return true;
      return false;
    case NiceExpr::Kind::And:
      return naive_member(r, e.lhs(), c) && naive_member(r, e.rhs(), c);
    case NiceExpr::Kind::Or:
      return naive_member(r, e.lhs(), c) || naive_member(r, e.rhs(), c);
    case NiceExpr::Kind::Not:
      return !naive_member(r, e.lhs(), c);
  }
  return false;
}

NiceExpr random_expr(std::mt19937_64& rng, std::size_t dim, std::size_t budget) {
  std::uniform_int_distribution<int> pick(0, 5);
  const int k = budget <= 1 ? 0 : pick(rng);
  auto atom = [&] {
    CountingConstraint c(dim);
    c.add(testing::random_cube(rng, dim, 2));
    return NiceExpr::atom(c);
  };
  switch (k) {
    case 1: return NiceExpr::post_star(random_expr(rng, dim, budget - 1));
    case 2: return NiceExpr::pre_star(random_expr(rng, dim, budget - 1));
    case 3: return NiceExpr::negate(random_expr(rng, dim, budget - 1));
    case 4:
      if (budget >= 3) return NiceExpr::conj(random_expr(rng, dim, budget / 2), random_expr(rng, dim, budget - 1 - budget / 2));
      return NiceExpr::post_star(random_expr(rng, dim, budget - 1));
    case 5:
      if (budget >= 3) return NiceExpr::disj(random_expr(rng, dim, budget / 2), random_expr(rng, dim, budget - 1 - budget / 2));
      return NiceExpr::pre_star(random_expr(rng, dim, budget - 1));
    default: return atom();
  }
}

}  // namespace

TEST_CASE("expression construction") {
  const CountingConstraint init(Cube({0, 0, 0}, {inf, 0, 0}));
  const auto e = NiceExpr::conj(NiceExpr::post_star(init), NiceExpr::negate(NiceExpr::pre_star(init)));
  CHECK(e.size() == 4);
  CHECK(NiceExpr::post_star(init).size() == 1);
  CHECK(NiceExpr::negate(NiceExpr::post_star(init)).size() == 2);
  CHECK(e.kind() == NiceExpr::Kind::And);
  CHECK(e.dimension() == 3);
  CHECK_FALSE(to_string(e).empty());
  CHECK_THROWS_AS(NiceExpr::conj(NiceExpr::atom(CountingConstraint(2)), NiceExpr::atom(CountingConstraint(3))), ModelError);
  CHECK_THROWS_AS(eval(examples::three_state_rbn(), NiceExpr::atom(CountingConstraint(2))), ModelError);
}

TEST_CASE("evaluation on the three-state network") {
  const auto r = examples::three_state_rbn();
  const CountingConstraint init(Cube({0, 0, 0}, {inf, 0, 0}));
  const CountingConstraint fin(Cube({0, 0, 1}, {inf, inf, inf}));
  const auto covered = NiceExpr::conj(NiceExpr::post_star(init), NiceExpr::atom(fin));
  CHECK(member(r, covered, Configuration{2, 0, 1}));
  CHECK(member(r, covered, Configuration{2, 0, 1}, MemberEngine::OnTheFly));
  CHECK_FALSE(member(r, covered, Configuration{1, 0, 1}));
  const auto stuck = NiceExpr::conj(NiceExpr::post_star(init), NiceExpr::negate(NiceExpr::pre_star(fin)));
  const auto st = eval(r, stuck);
  for (const auto& c : testing::all_up_to(3, 6)) CHECK(st.contains(c) == naive_member(r, stuck, c));
  const auto em = is_empty(r, stuck);
  CHECK_FALSE(em.empty);
  REQUIRE(em.witness);
  CHECK(naive_member(r, stuck, *em.witness));
  CHECK(is_empty(r, NiceExpr::conj(NiceExpr::atom(init), NiceExpr::atom(fin))).empty);
}

TEST_CASE("eval, on-the-fly and definitional membership agree") {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 60; ++round) {
    const auto r = round % 3 == 0 ? examples::three_state_rbn() : testing::random_rbn(round + 70, 3, 2);
    const auto e = random_expr(rng, 3, 1 + round % 4);
    const auto value = eval(r, e);
    for (const auto& c : testing::all_up_to(3, 4)) {
      const bool expected = naive_member(r, e, c);
      CHECK(value.contains(c) == expected);
      CHECK(member(r, e, c, MemberEngine::OnTheFly) == expected);
    }
  }
}

TEST_CASE("emptiness witnesses are members") {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 40; ++round) {
    const auto r = testing::random_rbn(round + 11, 3, 2);
    const auto e = random_expr(rng, 3, 1 + round % 4);
    const auto res = is_empty(r, e);
    if (res.empty) {
      for (const auto& c : testing::all_up_to(3, 4)) CHECK_FALSE(naive_member(r, e, c));
    } else {
      REQUIRE(res.witness);
      CHECK(naive_member(r, e, *res.witness));
    }
  }
}

TEST_CASE("cube reachability") {
  const auto r = examples::three_state_rbn();
  const auto res = cube_reach(r, CountingConstraint(Cube::exact(Configuration{3, 0, 0})),
                              CountingConstraint(Cube::exact(Configuration{2, 0, 1})));
  CHECK(res.reachable);
  CHECK(res.run.size() == 3);
  CHECK(is_run(r, res.run));
  CHECK_FALSE(cube_reach(r, CountingConstraint(Cube::exact(Configuration{2, 0, 0})),
                         CountingConstraint(Cube({0, 0, 1}, {inf, inf, inf})))
                  .reachable);
  const auto open = cube_reach(r, CountingConstraint(Cube({0, 0, 0}, {inf, 0, 0})),
                               CountingConstraint(Cube({0, 0, 2}, {inf, inf, inf})));
  CHECK(open.reachable);
  CHECK(is_run(r, open.run));
  CHECK(open.run.back()[2] >= 2);
}
