#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbn/counting.hpp"

namespace rbn {

enum class RegisterOp : std::uint8_t { Read, Write };

struct AsmsTransition {
  StateId source;
  RegisterOp op = RegisterOp::Read;
  Letter value;
  StateId target;
  auto operator<=>(const AsmsTransition&) const = default;
};

/// Agents sharing one register.
struct Asms {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<AsmsTransition> transitions;

  void add(AsmsTransition t);
  StateId state(std::string_view name) const;
  Letter letter(std::string_view name) const;
};

struct AsmsConfiguration {
  Configuration agents;
  Letter reg;
  auto operator<=>(const AsmsConfiguration&) const = default;
};

struct AsmsCube {
  Cube cube;
  Letter reg;
};

std::vector<AsmsConfiguration> asms_successors(const Asms& a, const AsmsConfiguration& c);

struct AsmsReach {
  bool reachable = false;
  std::uint64_t size = 0;
  std::vector<AsmsConfiguration> run;
};

/// Exact per size in [lo, hi]; says nothing about sizes outside the range.
AsmsReach asms_cube_reach_bounded(const Asms& a, const AsmsCube& from, const AsmsCube& to, std::uint64_t lo,
                                  std::uint64_t hi, std::size_t budget = kDefaultNodeBudget);

/// (p, q, p'): an agent in p observing an agent in q moves to p'.
struct IoTransition {
  StateId source;
  StateId observed;
  StateId target;
  auto operator<=>(const IoTransition&) const = default;
};

struct IoNet {
  std::vector<std::string> states;
  std::vector<IoTransition> transitions;

  void add(IoTransition t);
  StateId state(std::string_view name) const;
};

std::vector<Configuration> io_successors(const IoNet& n, const Configuration& c);

}  // namespace rbn
