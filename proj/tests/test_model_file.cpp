#include <doctest.h>

#include <fstream>
#include <sstream>

#include "rbn/closure.hpp"
#include "rbn/model_file.hpp"
#include "rbn/protocol.hpp"
#include "support.hpp"

using namespace rbn;

namespace {

constexpr Bound inf = kInfinity;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(RBN_MODELS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t error_line(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("three-state model file") {
  const auto m = parse_model(slurp("three_state.rbn"));
  CHECK(m.kind == ModelKind::Rbn);
  CHECK(m.name == "three_state");
  CHECK(m.rbn == examples::three_state_rbn());
  CHECK(m.find_cube("init") == Cube({0, 0, 0}, {inf, 0, 0}));
  CHECK_FALSE(m.find_cube("nope"));
  CHECK(m.resolve_constraint("start").contains(Configuration{4, 0, 0}));
  const auto covered = m.resolve_constraint("covered");
  CHECK(covered.contains(Configuration{2, 0, 1}));
  CHECK_FALSE(covered.contains(Configuration{1, 0, 1}));
  CHECK_THROWS_AS(m.resolve_constraint("nothing"), ModelError);
  CHECK(serialize(parse_model(serialize(m))) == serialize(m));
  CHECK(parse_model(serialize(m)) == m);
}

TEST_CASE("protocol model file") {
  const auto m = parse_model(slurp("at_least_two.protocol"));
  CHECK(m.kind == ModelKind::Protocol);
  const auto p = m.protocol();
  const auto ref = examples::at_least_three();
  CHECK(p.rbn.transitions().size() == ref.rbn.transitions().size());
  for (const auto& t : ref.rbn.transitions())
    CHECK(std::find(p.rbn.transitions().begin(), p.rbn.transitions().end(), t) != p.rbn.transitions().end());
  CHECK(p.inputs == ref.inputs);
  CHECK(p.output == ref.output);
  CHECK(parse_model(serialize(m)) == m);
  const auto mut = parse_model(slurp("no_attraction.protocol")).protocol();
  CHECK(mut.rbn.transitions().size() == examples::at_least_three_mutated().rbn.transitions().size());
  CHECK_THROWS_AS(parse_model(slurp("three_state.rbn")).protocol(), ModelError);
}

TEST_CASE("ASMS and IO net model files") {
  const auto a = parse_model(slurp("writer_reader.asms"));
  CHECK(a.kind == ModelKind::Asms);
  CHECK(a.asms.transitions.size() == 2);
  CHECK(a.asms.transitions[0].op == RegisterOp::Write);
  CHECK(parse_model(serialize(a)) == a);
  const auto n = parse_model(slurp("observe.ionet"));
  CHECK(n.kind == ModelKind::IoNet);
  CHECK(n.ionet.transitions.size() == 2);
  CHECK(parse_model(serialize(n)) == n);
}

TEST_CASE("expressions and constraints in model files") {
  const std::string text =
      "rbn t\nstates q1 q2 q3\nalphabet a b\n"
      "trans q1 !a q1\ntrans q1 ?a q2\ntrans q2 !b q1\ntrans q2 ?b q3\n"
      "cube init { q1:[0,inf] }\ncube fin { q3:[1,inf], q1:[0,inf], q2:[0,inf] }\n"
      "constraint both = init | fin\nconstraint none = empty\n"
      "expr stuck = post*(init) & !pre*(fin)\nexpr either = (init | fin) & !both\n";
  const auto m = parse_model(text);
  const auto stuck = m.resolve_constraint("stuck");
  for (const auto& c : testing::all_up_to(3, 5))
    CHECK(stuck.contains(c) == (poststar(m.rbn, m.resolve_constraint("init")).contains(c) &&
                                !prestar(m.rbn, m.resolve_constraint("fin")).contains(c)));
  CHECK(m.resolve_constraint("none").cubes().empty());
  for (const auto& c : testing::all_up_to(3, 4)) CHECK_FALSE(m.resolve_constraint("either").contains(c));
  CHECK(parse_model(serialize(m)) == m);
  CHECK(m.exprs.front().source == "post* ( init ) & ! pre* ( fin )");
}

TEST_CASE("parse errors carry positions") {
  const std::string head = "rbn t\nstates q1 q2\nalphabet a\n";
  CHECK(error_line(head + "trans q1 !c q2\n") == 4);
  CHECK(error_line(head + "trans q1 !a q9\n") == 4);
  CHECK(error_line(head + "trans q1 ^a q2\n") == 4);
  CHECK(error_line(head + "cube c { q1:[2,1 }\n") == 4);
  CHECK(error_line(head + "cube c { q7:[0,1] }\n") == 4);
  CHECK(error_line(head + "\n\nexpr e = post*(missing)\n") == 6);
  CHECK(error_line(head + "cube c { q1:[0,99999999999999999999] }\n") == 4);
  CHECK(error_line("states q1\n") == 1);
  CHECK(error_line("protocol p\nstates q\nalphabet a\ninputs q\n") > 0);
  try {
    parse_model(head + "trans q1 !c q2\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()) == "4:11: undeclared letter 'c'");
    CHECK(e.column() == 11);
  }
}

TEST_CASE("configuration arguments") {
  const std::vector<std::string> states{"q1", "q2", "q3"};
  CHECK(parse_configuration(states, "q1=2,q3=1") == Configuration{2, 0, 1});
  CHECK(parse_configuration(states, "2,0,1") == Configuration{2, 0, 1});
  CHECK(parse_configuration(states, "") == Configuration{0, 0, 0});
  CHECK_THROWS_AS(parse_configuration(states, "q9=1"), ModelError);
  CHECK_THROWS_AS(parse_configuration(states, "1,2"), ModelError);
  CHECK_THROWS_AS(parse_configuration(states, "q1=x"), ModelError);
}

TEST_CASE("JSON encoding") {
  const std::vector<std::string> states{"q1", "q2", "q3"};
  CHECK(to_json(states, Configuration{2, 0, 1}) == nlohmann::json{{"q1", 2}, {"q3", 1}});
  const auto j = to_json(states, Cube({1, 0, 0}, {inf, 2, 0}));
  CHECK(j["q1"] == nlohmann::json::array({1, "inf"}));
  CHECK(j["q2"] == nlohmann::json::array({0, 2}));
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    CountingConstraint c(3);
    for (int i = 0; i < round % 4; ++i) c.add(testing::random_cube(rng, 3, 5));
    const auto back = constraint_from_json(states, nlohmann::json::parse(to_json(states, c).dump()));
    CHECK(back == c);
  }
  CHECK_THROWS_AS(constraint_from_json(states, nlohmann::json::parse(R"({"states":["zz"],"cubes":[{"zz":[0,1]}]})")),
                  ModelError);
}
