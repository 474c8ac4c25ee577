// Serial versus OpenMP timings for the forward closure and the oracle sweep.

#include <chrono>
#include <cstdio>

#include <CLI11.hpp>

#include "../tests/support.hpp"
#include "rbn/closure.hpp"
#include "rbn/oracle.hpp"
#include "rbn/semantics.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closure benchmark"};
  std::size_t states = 5, letters = 2, size = 9, sweep = 7;
  std::uint64_t seed = 7;
  app.add_option("--states", states);
  app.add_option("--letters", letters);
  app.add_option("--size", size, "population size for the closure");
  app.add_option("--sweep", sweep, "max size for the oracle sweep");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  const auto r = rbn::testing::random_rbn(seed, states, letters);
  const auto sources = rbn::configurations_of_size(states, size);

  std::size_t a = 0, b = 0;
  const double ts = seconds([&] { a = rbn::forward_closure(r, sources).size(); });
  const double tp = seconds([&] { b = rbn::forward_closure_parallel(r, sources).size(); });
  std::printf("forward_closure   serial %8.3fs  parallel %8.3fs  nodes %zu/%zu\n", ts, tp, a, b);

  rbn::Cube start(std::vector<rbn::Bound>(states, 0), std::vector<rbn::Bound>(states, 0));
  start.upper[0] = rbn::kInfinity;
  rbn::CountingConstraint init(states);
  init.add(start);
  const auto candidate = rbn::poststar(r, init);
  std::size_t da = 0, db = 0;
  const double os = seconds([&] {
    rbn::PoststarOracle oracle(r, init);
    da = rbn::oracle_disagreements(oracle, candidate, sweep).size();
  });
  const double op = seconds([&] {
    rbn::PoststarOracle oracle(r, init);
    db = rbn::oracle_disagreements_parallel(oracle, candidate, sweep).size();
  });
  std::printf("oracle sweep      serial %8.3fs  parallel %8.3fs  mismatches %zu/%zu\n", os, op, da, db);
  return a == b && da == db ? 0 : 1;
}
