#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbn/asms.hpp"
#include "rbn/expr.hpp"
#include "rbn/protocol.hpp"

namespace rbn {

class ParseError : public ModelError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : ModelError(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

enum class ModelKind { Rbn, Protocol, Asms, IoNet };

struct NamedExpr {
  std::string name;
  std::string source;  // right-hand side, normalized spacing
  NiceExpr expr;
};

struct ModelFile {
  ModelKind kind = ModelKind::Rbn;
  std::string name;
  Rbn rbn;                               // Rbn and Protocol
  std::vector<StateId> inputs;           // Protocol
  std::vector<std::uint8_t> output;      // Protocol
  Asms asms;                             // Asms
  IoNet ionet;                           // IoNet
  std::vector<std::pair<std::string, Cube>> cubes;
  std::vector<std::pair<std::string, std::vector<std::string>>> constraints;  // union of cube names
  std::vector<NamedExpr> exprs;

  const std::vector<std::string>& state_names() const;
  std::size_t dimension() const { return state_names().size(); }
  Protocol protocol() const;

  std::optional<Cube> find_cube(std::string_view name) const;
  /// A cube, constraint or expression name; expressions are evaluated.
  CountingConstraint resolve_constraint(std::string_view name, std::size_t budget = kDefaultNodeBudget) const;
  NiceExpr resolve_expr(std::string_view name) const;
  StateId state(std::string_view name) const;

  bool operator==(const ModelFile& o) const;
};

ModelFile parse_model(const std::string& text);
std::string serialize(const ModelFile& m);

/// `q1=2,q3=1` (names) or `2,0,1` (positional).
Configuration parse_configuration(const std::vector<std::string>& states, const std::string& text);

nlohmann::json to_json(const std::vector<std::string>& states, const Configuration& c);
nlohmann::json to_json(const std::vector<std::string>& states, const Cube& c);
nlohmann::json to_json(const std::vector<std::string>& states, const CountingConstraint& c);
CountingConstraint constraint_from_json(const std::vector<std::string>& states, const nlohmann::json& j);

}  // namespace rbn
