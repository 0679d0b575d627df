#include "doctest.h"

#include "crnmix/kinetics.hpp"
#include "crnmix/mixing.hpp"
#include "crnmix/parser.hpp"
#include "crnmix/ssa.hpp"
#include "crnmix/stationary.hpp"
#include "test_common.hpp"

#include <cmath>

using namespace crnmix;
using testutil::load_network;

TEST_SUITE("stationary") {

TEST_CASE("unit-rate cycle networks have the all-ones equilibrium") {
  for (const char* name : {"network5.crn", "network6.crn", "enzyme7_open.crn"}) {
    ReactionNetwork net = load_network(name);
    std::vector<double> c =
        find_equilibrium(net, std::vector<double>(net.species_count(), 1.0));
    std::vector<double> f = mass_action_field(net, c);
    for (double ci : c) CHECK(ci == doctest::Approx(1.0).epsilon(1e-12));
    for (double fi : f) CHECK(std::abs(fi) <= 1e-12);
  }
}

TEST_CASE("birth-death equilibrium is the rate ratio") {
  ReactionNetwork net = parse_network("0 <-> S @ 3, 2");
  std::vector<double> c = find_equilibrium(net, {7.0});
  CHECK(c[0] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("convergence from an off-equilibrium guess") {
  ReactionNetwork net = load_network("network5.crn");
  std::vector<double> c = find_equilibrium(net, {2.0, 0.5, 1.7});
  std::vector<double> f = mass_action_field(net, c);
  for (double fi : f) CHECK(std::abs(fi) <= 1e-12);
  for (double ci : c) CHECK(ci > 0.0);
}

TEST_CASE("equilibrium failure modes are reported") {
  // Pure birth: F(c) = 1 with a zero Jacobian.
  CHECK_THROWS_AS(find_equilibrium(parse_network("0 -> S"), {1.0}), EquilibriumError);
  CHECK_THROWS_AS(find_equilibrium(parse_network("0 <-> S"), {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("complex balance checks") {
  ReactionNetwork net5 = load_network("network5.crn");
  CHECK(is_complex_balanced(net5, {1.0, 1.0, 1.0}));
  CHECK_FALSE(is_complex_balanced(parse_network("A -> B"), {1.0, 1.0}));
  CHECK(is_complex_balanced(parse_network("A <-> B @ 1, 2"), {2.0, 1.0}));
  CHECK_FALSE(is_complex_balanced(net5, {2.0, 1.0, 1.0}));
}

TEST_CASE("total complex inflow equals total outflow") {
  for (const char* name : {"network5.crn", "network6.crn", "enzyme7_open.crn"}) {
    ReactionNetwork net = load_network(name);
    std::vector<double> res = complex_balance_residuals(
        net, std::vector<double>(net.species_count(), 1.0));
    double sum = 0.0;
    for (double v : res) sum += v;
    CHECK(std::abs(sum) <= 1e-12);
  }
}

TEST_CASE("product-Poisson point masses") {
  StationaryDistribution pi = product_poisson({1.0, 1.0, 1.0});
  CHECK(pi.pmf(State{0, 0, 0}) ==
        doctest::Approx(0.049787068367863944).epsilon(1e-12));  // e^-3
  StationaryDistribution one = product_poisson({1.0});
  CHECK(one.pmf(State{1}) == doctest::Approx(0.36787944117144233).epsilon(1e-12));
  StationaryDistribution two = product_poisson({2.0, 1.0});
  CHECK(two.pmf(State{1, 0}) ==
        doctest::Approx(0.09957413673572789).epsilon(1e-12));  // 2 e^-3
  CHECK_THROWS_AS(product_poisson({0.0}), std::invalid_argument);
}

TEST_CASE("stationarity under the generator, truncated quadrature") {
  // For a complex-balanced pair the product-Poisson pi must annihilate the
  // generator: sum_x pi(x) A f(x) ~ 0 for coordinate maps and second
  // factorial moments, summed over [0, c_i + 12 sqrt(c_i)] per coordinate.
  for (const char* name : {"network5.crn", "network6.crn"}) {
    ReactionNetwork net = load_network(name);
    std::vector<double> c(net.species_count(), 1.0);
    REQUIRE(is_complex_balanced(net, c));
    StationaryDistribution pi = product_poisson(c);
    long long bound = static_cast<long long>(std::ceil(1.0 + 12.0 * std::sqrt(1.0)));

    for (int target = 0; target < 2 * net.species_count(); ++target) {
      auto f = [&](const State& x) -> double {
        int i = target % net.species_count();
        double xi = static_cast<double>(x[i]);
        return target < net.species_count() ? xi : xi * (xi - 1.0);
      };
      double sum = 0.0;
      State x(net.species_count(), 0);
      while (true) {
        sum += pi.pmf(x) * apply_generator(net, f, x);
        int i = net.species_count() - 1;
        while (i >= 0 && x[i] == bound) x[i--] = 0;
        if (i < 0) break;
        ++x[i];
      }
      CAPTURE(name);
      CAPTURE(target);
      // The truncation surface term at this box is ~4e-8 for the factorial
      // moments (pmf(14) ~ 4e-12 times cubic generator growth), so the
      // numerically-zero threshold sits at 1e-7.
      CHECK(std::abs(sum) <= 1e-7);
    }
  }
}

TEST_CASE("pi selection pipeline: product form for the open cycle") {
  ReactionNetwork net = load_network("network5.crn");
  SimulationConfig sim;
  sim.replicates = 2000;
  sim.seed = 5;
  StationaryChoice choice = choose_stationary(net, State{1, 1, 1}, 60, sim);
  CHECK(choice.complex_balanced);
  CHECK(choice.irreducible);
  CHECK(choice.pi.kind == StationaryDistribution::Kind::ProductPoisson);
  CHECK(choice.equilibrium[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pi selection pipeline: empirical fallback for a reducible chain") {
  // 2S1 -> S1 -> 0 collapses to the origin; the probe fails and the pipeline
  // falls back to a long-run empirical table (a point mass at 0 here).
  ReactionNetwork net = parse_network("2S1 -> S1\nS1 -> 0");
  SimulationConfig sim;
  sim.replicates = 500;
  sim.seed = 11;
  sim.threads = 2;
  StationaryChoice choice = choose_stationary(net, State{5}, 30, sim);
  CHECK_FALSE(choice.irreducible);
  CHECK(choice.pi.kind == StationaryDistribution::Kind::Empirical);
  REQUIRE(choice.pi.table.size() == 1);
  CHECK(choice.pi.table[0].first == State{0});
  CHECK(choice.pi.table[0].second == 1.0);
}

TEST_CASE("non-complex-balanced rates fall back to the empirical table") {
  // Unequal cycle rates break complex balance at the equilibrium.
  ReactionNetwork net = parse_network(
      "A -> B @ 2\nB -> 2C\n2C -> A\n0 <-> A\n0 <-> B\n0 <-> C");
  std::vector<double> c = find_equilibrium(net, {1.0, 1.0, 1.0});
  CHECK_FALSE(is_complex_balanced(net, c));
  SimulationConfig sim;
  sim.replicates = 300;
  sim.seed = 3;
  StationaryChoice choice = choose_stationary(net, State{1, 1, 1}, 40, sim);
  CHECK(choice.pi.kind == StationaryDistribution::Kind::Empirical);
}

}  // TEST_SUITE
