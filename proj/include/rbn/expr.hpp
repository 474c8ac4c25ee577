#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbn/closure.hpp"

namespace rbn {

/// Expression over counting constraints with post*, pre*, ∩, ∪ and complement.
class NiceExpr {
 public:
  enum class Kind { Atom, PostStar, PreStar, And, Or, Not };

  static NiceExpr atom(CountingConstraint c);
  static NiceExpr post_star(NiceExpr e);
  static NiceExpr pre_star(NiceExpr e);
  static NiceExpr post_star(CountingConstraint c) { return post_star(atom(std::move(c))); }
  static NiceExpr pre_star(CountingConstraint c) { return pre_star(atom(std::move(c))); }
  static NiceExpr conj(NiceExpr a, NiceExpr b);
  static NiceExpr disj(NiceExpr a, NiceExpr b);
  static NiceExpr negate(NiceExpr a);

  Kind kind() const { return node_->kind; }
  std::size_t dimension() const { return node_->dim; }
  const CountingConstraint& constraint() const { return node_->constraint; }  // Atom only
  const NiceExpr& lhs() const { return *node_->lhs; }
  const NiceExpr& rhs() const { return *node_->rhs; }
  /// Number of post*, pre* and atom leaves plus operators.
  std::size_t size() const;

 private:
  struct Node {
    Kind kind;
    std::size_t dim;
    CountingConstraint constraint;
    std::shared_ptr<const NiceExpr> lhs, rhs;
  };
  explicit NiceExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static NiceExpr make(Kind k, std::size_t dim, CountingConstraint c, std::shared_ptr<const NiceExpr> l,
                       std::shared_ptr<const NiceExpr> r);

  std::shared_ptr<const Node> node_;
};

std::string to_string(const NiceExpr& e);

CountingConstraint eval(const Rbn& r, const NiceExpr& e, std::size_t budget = kDefaultNodeBudget);

enum class MemberEngine { Evaluate, OnTheFly };
bool member(const Rbn& r, const NiceExpr& e, const Configuration& c, MemberEngine engine = MemberEngine::Evaluate,
            std::size_t budget = kDefaultNodeBudget);

struct Emptiness {
  bool empty = true;
  std::optional<Configuration> witness;
};

/// Scans sizes 0..norm of the evaluated representation.
Emptiness is_empty(const Rbn& r, const NiceExpr& e, std::size_t budget = kDefaultNodeBudget);

struct CubeReach {
  bool reachable = false;
  std::vector<Configuration> run;  // start ∈ from, end ∈ to
};

CubeReach cube_reach(const Rbn& r, const CountingConstraint& from, const CountingConstraint& to,
                     std::size_t budget = kDefaultNodeBudget);

}  // namespace rbn
