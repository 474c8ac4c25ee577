#include "rbn/expr.hpp"

namespace rbn {

NiceExpr NiceExpr::make(Kind k, std::size_t dim, CountingConstraint c, std::shared_ptr<const NiceExpr> l,
                        std::shared_ptr<const NiceExpr> r) {
  return NiceExpr(std::make_shared<const Node>(Node{k, dim, std::move(c), std::move(l), std::move(r)}));
}

NiceExpr NiceExpr::atom(CountingConstraint c) {
  const auto dim = c.dimension();
  return make(Kind::Atom, dim, std::move(c), nullptr, nullptr);
}

NiceExpr NiceExpr::post_star(NiceExpr e) {
  const auto dim = e.dimension();
  return make(Kind::PostStar, dim, CountingConstraint(dim), std::make_shared<const NiceExpr>(std::move(e)), nullptr);
}

NiceExpr NiceExpr::pre_star(NiceExpr e) {
  const auto dim = e.dimension();
  return make(Kind::PreStar, dim, CountingConstraint(dim), std::make_shared<const NiceExpr>(std::move(e)), nullptr);
}

NiceExpr NiceExpr::conj(NiceExpr a, NiceExpr b) {
  if (a.dimension() != b.dimension()) throw ModelError("expression dimension mismatch");
  const auto dim = a.dimension();
  return make(Kind::And, dim, CountingConstraint(dim), std::make_shared<const NiceExpr>(std::move(a)),
              std::make_shared<const NiceExpr>(std::move(b)));
}

NiceExpr NiceExpr::disj(NiceExpr a, NiceExpr b) {
  if (a.dimension() != b.dimension()) throw ModelError("expression dimension mismatch");
  const auto dim = a.dimension();
  return make(Kind::Or, dim, CountingConstraint(dim), std::make_shared<const NiceExpr>(std::move(a)),
              std::make_shared<const NiceExpr>(std::move(b)));
}

NiceExpr NiceExpr::negate(NiceExpr a) {
  const auto dim = a.dimension();
  return make(Kind::Not, dim, CountingConstraint(dim), std::make_shared<const NiceExpr>(std::move(a)), nullptr);
}

std::size_t NiceExpr::size() const {
  switch (kind()) {
    case Kind::Atom: return 1;
    case Kind::PostStar:
    case Kind::PreStar:
      return lhs().kind() == Kind::Atom ? 1 : 1 + lhs().size();
    case Kind::Not: return 1 + lhs().size();
    case Kind::And:
    case Kind::Or: return 1 + lhs().size() + rhs().size();
  }
  return 0;
}

std::string to_string(const NiceExpr& e) {
  switch (e.kind()) {
    case NiceExpr::Kind::Atom: return "(" + to_string(e.constraint()) + ")";
    case NiceExpr::Kind::PostStar: return "post*" + to_string(e.lhs());
    case NiceExpr::Kind::PreStar: return "pre*" + to_string(e.lhs());
    case NiceExpr::Kind::Not: return "!" + to_string(e.lhs());
    case NiceExpr::Kind::And: return "(" + to_string(e.lhs()) + " & " + to_string(e.rhs()) + ")";
    case NiceExpr::Kind::Or: return "(" + to_string(e.lhs()) + " | " + to_string(e.rhs()) + ")";
  }
  return {};
}

CountingConstraint eval(const Rbn& r, const NiceExpr& e, std::size_t budget) {
  if (e.dimension() != r.state_count()) throw ModelError("expression dimension mismatch");
  switch (e.kind()) {
    case NiceExpr::Kind::Atom: return e.constraint();
    case NiceExpr::Kind::PostStar: return poststar(r, eval(r, e.lhs(), budget), budget);
    case NiceExpr::Kind::PreStar: return prestar(r, eval(r, e.lhs(), budget), budget);
    case NiceExpr::Kind::Not: return complement(eval(r, e.lhs(), budget));
    case NiceExpr::Kind::And: return simplify(intersect(eval(r, e.lhs(), budget), eval(r, e.rhs(), budget)));
    case NiceExpr::Kind::Or: return simplify(unite(eval(r, e.lhs(), budget), eval(r, e.rhs(), budget)));
  }
  throw std::logic_error("unknown expression kind");
}

namespace {

bool member_on_the_fly(const Rbn& r, const NiceExpr& e, const Configuration& c, std::size_t budget) {
  auto leaf = [&](const NiceExpr& x) {
    return x.kind() == NiceExpr::Kind::Atom ? x.constraint() : eval(r, x, budget);
  };
  switch (e.kind()) {
    case NiceExpr::Kind::Atom: return e.constraint().contains(c);
    case NiceExpr::Kind::PostStar: return member_poststar_oracle(r, leaf(e.lhs()), c, budget);
    case NiceExpr::Kind::PreStar: return member_poststar_oracle(reverse(r), leaf(e.lhs()), c, budget);
    case NiceExpr::Kind::Not: return !member_on_the_fly(r, e.lhs(), c, budget);
    case NiceExpr::Kind::And:
      return member_on_the_fly(r, e.lhs(), c, budget) && member_on_the_fly(r, e.rhs(), c, budget);
    case NiceExpr::Kind::Or:
      return member_on_the_fly(r, e.lhs(), c, budget) || member_on_the_fly(r, e.rhs(), c, budget);
  }
  throw std::logic_error("unknown expression kind");
}

}  // namespace

bool member(const Rbn& r, const NiceExpr& e, const Configuration& c, MemberEngine engine, std::size_t budget) {
  if (engine == MemberEngine::Evaluate) return eval(r, e, budget).contains(c);
  return member_on_the_fly(r, e, c, budget);
}

Emptiness is_empty(const Rbn& r, const NiceExpr& e, std::size_t budget) {
  const auto value = eval(r, e, budget);
  const auto cap = norm(value);
  for (std::uint64_t n = 0; n <= cap; ++n) {
    auto members = enumerate_size(value, n);
    if (!members.empty()) return {false, members.front()};
  }
  return {true, std::nullopt};
}

CubeReach cube_reach(const Rbn& r, const CountingConstraint& from, const CountingConstraint& to, std::size_t budget) {
  const auto res = is_empty(r, NiceExpr::conj(NiceExpr::post_star(from), NiceExpr::atom(to)), budget);
  if (res.empty) return {};
  auto run = poststar_run(r, from, *res.witness, budget);
  if (!run) throw std::logic_error("post* witness has no concrete run");
  return {true, std::move(*run)};
}

}  // namespace rbn
