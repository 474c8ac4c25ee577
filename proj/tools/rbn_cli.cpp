// Command-line front end: parses a model file, runs one analysis, prints JSON.
// Exit codes: 0 ok / property holds, 1 property false, 2 error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "rbn/almost_sure.hpp"
#include "rbn/model_file.hpp"

using nlohmann::json;
using namespace rbn;

namespace {

struct Outcome {
  json body;
  int code = 0;
};

ModelFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

json run_json(const std::vector<std::string>& states, const std::vector<Configuration>& run) {
  json j = json::array();
  for (const auto& c : run) j.push_back(to_json(states, c));
  return j;
}

// Predicate sides are written as cubes over all states; only input coordinates count.
CountingConstraint project_inputs(const ModelFile& m, const CountingConstraint& full) {
  CountingConstraint out(m.inputs.size());
  for (const auto& c : full.cubes()) {
    Cube k(std::vector<Bound>(m.inputs.size()), std::vector<Bound>(m.inputs.size()));
    for (std::size_t i = 0; i < m.inputs.size(); ++i) {
      k.lower[i] = c.lower[m.inputs[i].index];
      k.upper[i] = c.upper[m.inputs[i].index];
    }
    out.add(std::move(k));
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      auto v = std::stoull(s);
      return {v, v};
    }
    return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ModelError("bad size range '" + s + "', expected a..b");
  }
}

void require_rbn(const ModelFile& m) {
  if (m.kind != ModelKind::Rbn && m.kind != ModelKind::Protocol) throw ModelError("command needs an RBN or protocol model");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability and verification analyses for reconfigurable broadcast networks"};
  app.require_subcommand(1);
  std::size_t budget = kDefaultNodeBudget;
  app.add_option("--budget", budget, "node budget for explicit searches")->capture_default_str();

  std::string file, from, to, target, config, init, fin, phi0, phi1, dot, sizes, from_reg, to_reg, engine = "eval";
  std::vector<Count> input;
  std::uint64_t seed = 1, k = 0;
  std::size_t steps = 1000, index = 0;

  auto model_arg = [&](CLI::App* sub) { sub->add_option("model", file, "model file")->required(); };

  auto* reach = app.add_subcommand("reach", "cube reachability with a witness run");
  model_arg(reach);
  reach->add_option("--from", from)->required();
  reach->add_option("--to", to)->required();

  auto* post = app.add_subcommand("poststar", "post* of a cube, constraint or expression");
  model_arg(post);
  post->add_option("set", target)->required();
  auto* pre = app.add_subcommand("prestar", "pre* of a cube, constraint or expression");
  model_arg(pre);
  pre->add_option("set", target)->required();

  auto* mem = app.add_subcommand("member", "membership of a configuration in an expression");
  model_arg(mem);
  mem->add_option("expr", target)->required();
  mem->add_option("config", config, "q1=2,q3=1 or 2,0,1")->required();
  mem->add_option("--engine", engine)->check(CLI::IsMember({"eval", "fly"}));

  auto* emp = app.add_subcommand("empty", "emptiness of an expression");
  model_arg(emp);
  emp->add_option("expr", target)->required();

  auto* cut = app.add_subcommand("cutoff", "almost-sure coverability cut-off");
  model_arg(cut);
  cut->add_option("--init", init)->required();
  cut->add_option("--fin", fin)->required();

  auto* ver = app.add_subcommand("verify-protocol", "does the protocol compute the predicate");
  model_arg(ver);
  ver->add_option("--phi1", phi1)->required();
  ver->add_option("--phi0", phi0)->required();

  auto* sim = app.add_subcommand("simulate", "random fair-ish run of a protocol");
  model_arg(sim);
  sim->add_option("--input", input)->required();
  sim->add_option("--seed", seed);
  sim->add_option("--steps", steps);

  auto* sym = app.add_subcommand("symgraph", "materialize the symbolic graph of an index");
  model_arg(sym);
  sym->add_option("--index", index)->required();
  sym->add_option("--dot", dot, "write Graphviz output here");

  auto* asr = app.add_subcommand("asms-reach", "bounded ASMS cube reachability");
  model_arg(asr);
  asr->add_option("--from", from)->required();
  asr->add_option("--to", to)->required();
  asr->add_option("--from-register", from_reg)->required();
  asr->add_option("--to-register", to_reg)->required();
  asr->add_option("--sizes", sizes, "a..b")->required();

  auto* omem = app.add_subcommand("oracle-member", "brute-force post* membership");
  model_arg(omem);
  omem->add_option("set", target)->required();
  omem->add_option("config", config)->required();

  auto* oreach = app.add_subcommand("oracle-reach", "brute-force configuration reachability");
  model_arg(oreach);
  oreach->add_option("--from", from)->required();
  oreach->add_option("--to", to)->required();

  auto* osucc = app.add_subcommand("oracle-successors", "one-step successors of a configuration");
  model_arg(osucc);
  osucc->add_option("config", config)->required();

  auto* ocover = app.add_subcommand("oracle-cover", "fixed-size almost-sure coverability");
  model_arg(ocover);
  ocover->add_option("--init", init)->required();
  ocover->add_option("--fin", fin)->required();
  ocover->add_option("-k", k)->required();

  auto* oscc = app.add_subcommand("oracle-scc", "bottom-SCC convergence of a protocol input");
  model_arg(oscc);
  oscc->add_option("--input", input)->required();

  CLI11_PARSE(app, argc, argv);

  Outcome out;
  try {
    const ModelFile m = load(file);
    const auto& states = m.state_names();
    if (*reach) {
      require_rbn(m);
      auto res = cube_reach(m.rbn, m.resolve_constraint(from, budget), m.resolve_constraint(to, budget), budget);
      out.body = {{"reachable", res.reachable}};
      if (res.reachable) {
        out.body["run"] = run_json(states, res.run);
        out.body["steps"] = res.run.size() - 1;
      }
      out.code = res.reachable ? 0 : 1;
    } else if (*post || *pre) {
      require_rbn(m);
      auto c = m.resolve_constraint(target, budget);
      auto r = *post ? poststar(m.rbn, c, budget) : prestar(m.rbn, c, budget);
      out.body = to_json(states, r);
      out.body["norm"] = norm(r);
    } else if (*mem) {
      require_rbn(m);
      const auto c = parse_configuration(states, config);
      const bool res = member(m.rbn, m.resolve_expr(target), c,
                              engine == "eval" ? MemberEngine::Evaluate : MemberEngine::OnTheFly, budget);
      out.body = {{"member", res}, {"configuration", to_json(states, c)}};
      out.code = res ? 0 : 1;
    } else if (*emp) {
      require_rbn(m);
      auto res = is_empty(m.rbn, m.resolve_expr(target), budget);
      out.body = {{"empty", res.empty}};
      if (res.witness) out.body["witness"] = to_json(states, *res.witness);
      out.code = res.empty ? 0 : 1;
    } else if (*cut) {
      require_rbn(m);
      auto v = cutoff(m.rbn, m.state(init), m.state(fin), budget);
      out.body = {{"polarity", v.polarity == Polarity::Positive ? "positive" : "negative"},
                  {"bound", v.bound},
                  {"evidence", to_json(states, v.evidence)}};
      if (v.infinite_cube) out.body["infinite_cube"] = to_json(states, *v.infinite_cube);
      if (v.witness)
        out.body["witness"] = {{"state", states[v.witness->first.index]},
                               {"configuration", to_json(states, v.witness->second)}};
    } else if (*ver) {
      const Protocol p = m.protocol();
      PredicateSpec phi{project_inputs(m, m.resolve_constraint(phi0, budget)),
                        project_inputs(m, m.resolve_constraint(phi1, budget))};
      auto v = verify_computes(p, phi, budget);
      out.body = {{"computes", v.computes}};
      if (v.counterexample)
        out.body["counterexample"] = {{"b", v.counterexample->first},
                                      {"configuration", to_json(states, v.counterexample->second)}};
      out.code = v.computes ? 0 : 1;
    } else if (*sim) {
      const Protocol p = m.protocol();
      auto s = simulate_fair(p, input, seed, steps);
      out.body = {{"steps", s.trace.size() - 1},
                  {"final", to_json(states, s.trace.back())},
                  {"trace", run_json(states, s.trace)}};
      out.body["verdict"] = s.verdict ? json(*s.verdict) : json(nullptr);
    } else if (*sym) {
      require_rbn(m);
      auto g = materialize(m.rbn, index, budget);
      json edges = json::array();
      for (const auto& e : g.edges)
        edges.push_back({{"from", to_string(m.rbn, e.source)},
                         {"letter", m.rbn.name(e.letter)},
                         {"to", to_string(m.rbn, e.target)}});
      out.body = {{"index", index}, {"nodes", g.nodes.size()}, {"edges", edges}};
      if (!dot.empty()) {
        std::ofstream os(dot);
        if (!os) throw ModelError("cannot write '" + dot + "'");
        os << to_dot(m.rbn, g);
      }
    } else if (*asr) {
      if (m.kind != ModelKind::Asms) throw ModelError("asms-reach needs an ASMS model");
      auto fc = m.find_cube(from), tc = m.find_cube(to);
      if (!fc || !tc) throw ModelError("asms-reach takes cube names");
      auto [lo, hi] = parse_range(sizes);
      auto res = asms_cube_reach_bounded(m.asms, {*fc, m.asms.letter(from_reg)}, {*tc, m.asms.letter(to_reg)}, lo, hi,
                                         budget);
      out.body = {{"reachable", res.reachable}, {"sizes", {lo, hi}}, {"bounded", true}};
      if (res.reachable) {
        json run = json::array();
        for (const auto& c : res.run)
          run.push_back({{"agents", to_json(states, c.agents)}, {"register", m.asms.alphabet[c.reg.index]}});
        out.body["size"] = res.size;
        out.body["run"] = run;
      }
      out.code = res.reachable ? 0 : 1;
    } else if (*omem) {
      require_rbn(m);
      const auto c = parse_configuration(states, config);
      auto run = poststar_run(m.rbn, m.resolve_constraint(target, budget), c, budget);
      out.body = {{"member", run.has_value()}};
      if (run) out.body["run"] = run_json(states, *run);
      out.code = run ? 0 : 1;
    } else if (*oreach) {
      require_rbn(m);
      const auto a = parse_configuration(states, from), b = parse_configuration(states, to);
      const bool res = reachable(m.rbn, a, b, budget);
      out.body = {{"reachable", res}};
      out.code = res ? 0 : 1;
    } else if (*osucc) {
      require_rbn(m);
      out.body = {{"successors", run_json(states, successors(m.rbn, parse_configuration(states, config)))}};
    } else if (*ocover) {
      require_rbn(m);
      const bool res = as_cover_fixed(m.rbn, static_cast<Count>(k), m.state(init), m.state(fin), budget);
      out.body = {{"almost_sure", res}, {"k", k}};
      out.code = res ? 0 : 1;
    } else if (*oscc) {
      const Protocol p = m.protocol();
      auto c = bottom_scc_oracle(p, input, budget);
      out.body = {{"converges_zero", c.converges_zero}, {"converges_one", c.converges_one}};
      out.code = c.converges() ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    out = {{{"error", e.what()}, {"reason", "budget"}, {"budget", e.budget()}}, 2};
  } catch (const ParseError& e) {
    out = {{{"error", e.what()}, {"reason", "parse"}, {"line", e.line()}, {"column", e.column()}}, 2};
  } catch (const std::exception& e) {
    out = {{{"error", e.what()}, {"reason", "model"}}, 2};
  }
  std::cout << out.body.dump(2) << '\n';
  return out.code;
}
