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

TEST_SUITE("simulation") {

TEST_CASE("a network without reactions is absorbing") {
  ReactionNetwork net = parse_network("# nothing\n");
  net.species.push_back(Species{"A", 0});
  net.species.push_back(Species{"B", 1});
  RngStream rng = RngStream::for_replicate(42, 0);
  CHECK(simulate_until(net, State{3, 4}, 100.0, rng) == State{3, 4});
}

TEST_CASE("pure birth endpoint is Poisson(t)") {
  ReactionNetwork net = parse_network("0 -> S");
  SimulationConfig cfg;
  cfg.seed = 2023;
  cfg.replicates = 100'000;
  cfg.threads = 2;
  TransientDistribution dist = transient_distribution(net, State{0}, 5.0, cfg, 200);
  CHECK(dist.mean()[0] == doctest::Approx(5.0).epsilon(0.01));
  CHECK(std::abs(dist.mean()[0] - 5.0) <= 0.05);
  CHECK(dist.out_of_box == 0);

  // Distributional check against the Poisson oracle at t = 2.
  TransientDistribution d2 = transient_distribution(net, State{0}, 2.0, cfg, 200);
  StationaryDistribution poisson2 = product_poisson({2.0});
  TvResult tv = tv_distance(d2, poisson2, 200);
  CHECK(tv.tv <= 0.02);
}

TEST_CASE("pure death endpoint matches the exponential decay mean") {
  ReactionNetwork net = parse_network("S -> 0");
  SimulationConfig cfg;
  cfg.seed = 7;
  cfg.replicates = 100'000;
  cfg.threads = 2;
  TransientDistribution dist = transient_distribution(net, State{10}, 1.0, cfg, 200);
  CHECK(std::abs(dist.mean()[0] - 10.0 * std::exp(-1.0)) <= 0.05);
}

TEST_CASE("t = 0 is a point mass at the origin state") {
  ReactionNetwork net = load_network("network5.crn");
  SimulationConfig cfg;
  cfg.seed = 1;
  cfg.replicates = 1000;
  TransientDistribution dist = transient_distribution(net, State{2, 3, 4}, 0.0, cfg, 60);
  REQUIRE(dist.counts.size() == 1);
  CHECK(dist.counts[0].first == State{2, 3, 4});
  CHECK(dist.counts[0].second == 1000);
  CHECK(dist.out_of_box == 0);
}

TEST_CASE("frequencies plus out-of-box mass account for every replicate") {
  ReactionNetwork net = load_network("network5.crn");
  SimulationConfig cfg;
  cfg.seed = 99;
  cfg.replicates = 20'000;
  cfg.threads = 2;
  // A deliberately tight box so some endpoints fall outside.
  TransientDistribution dist =
      transient_distribution(net, State{6, 6, 6}, 0.5, cfg, 6);
  long long total = dist.out_of_box;
  for (const auto& [s, c] : dist.counts) {
    (void)s;
    total += c;
  }
  CHECK(total == dist.tabulated);
  CHECK(dist.out_of_box > 0);
  double mass = dist.out_of_box_mass();
  for (size_t i = 0; i < dist.counts.size(); ++i) mass += dist.frequency(i);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("network (5) relaxes to product-Poisson(1,1,1) by t = 30") {
  ReactionNetwork net = load_network("network5.crn");
  SimulationConfig cfg;
  cfg.seed = 20240915;
  cfg.replicates = 100'000;
  cfg.threads = 2;
  TransientDistribution dist =
      transient_distribution(net, State{1, 1, 1}, 30.0, cfg, 200);
  StationaryDistribution pi = product_poisson({1.0, 1.0, 1.0});
  TvResult tv = tv_distance(dist, pi, 200);
  CHECK(tv.tv <= 0.05);
}

TEST_CASE("bit-exact reproducibility across worker counts and seeds") {
  ReactionNetwork net = load_network("network6.crn");
  SimulationConfig one;
  one.seed = 555;
  one.replicates = 5000;
  one.threads = 1;
  SimulationConfig four = one;
  four.threads = 4;

  auto grid = std::vector<double>{0.5, 1.0, 2.0};
  auto a = transient_distribution_grid(net, State{10, 10, 10}, grid, one, 200);
  auto b = transient_distribution_grid(net, State{10, 10, 10}, grid, four, 200);
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].counts == b[k].counts);
    CHECK(a[k].out_of_box == b[k].out_of_box);
    CHECK(a[k].coordinate_sums == b[k].coordinate_sums);
  }

  SimulationConfig other = one;
  other.seed = 556;
  auto c = transient_distribution_grid(net, State{10, 10, 10}, grid, other, 200);
  CHECK(a[0].counts != c[0].counts);
}

TEST_CASE("conservation holds exactly along closed trajectories") {
  // The enzyme core has no flow reactions, so w . X(t) is invariant.
  ReactionNetwork net = parse_network("S+E <-> SE\nSE <-> E+P\nS <-> P");
  std::vector<long long> w{1, 1, 2, 1};
  State x0{5, 3, 2, 4};
  long long w0 = 0;
  for (int i = 0; i < 4; ++i) w0 += w[i] * x0[i];
  for (int rep = 0; rep < 200; ++rep) {
    RngStream rng = RngStream::for_replicate(31415, rep);
    State xt = simulate_until(net, x0, 25.0, rng);
    long long wt = 0;
    for (int i = 0; i < 4; ++i) wt += w[i] * xt[i];
    CHECK(wt == w0);
  }
}

TEST_CASE("irreducibility probe") {
  CHECK(irreducibility_probe(load_network("network5.crn"), State{3, 3, 3}, 20));
  CHECK_FALSE(irreducibility_probe(parse_network("2S1 -> S1\nS1 -> 0"), State{5}, 20));
  ReactionNetwork empty = parse_network("");
  empty.species.push_back(Species{"A", 0});
  CHECK_FALSE(irreducibility_probe(empty, State{5}, 20));
  CHECK(irreducibility_probe(empty, State{0}, 20));
}

TEST_CASE("explosion guard: per-trajectory cap and ensemble threshold") {
  // Quadratic self-amplification blows up in finite time.
  ReactionNetwork net = parse_network("2S -> 3S");
  RngStream rng = RngStream::for_replicate(1, 0);
  CHECK_THROWS_AS(simulate_until(net, State{5}, 10.0, rng, 2000), ExplosionError);

  SimulationConfig cfg;
  cfg.seed = 1;
  cfg.replicates = 50;
  cfg.max_events = 2000;
  CHECK_THROWS_AS(transient_distribution(net, State{5}, 10.0, cfg, 200),
                  ExplosionError);
}

TEST_CASE("short-time expectations match the generator") {
  // |(E[f(X(h))] - f(x))/h - Af(x)| within 3 combined standard errors plus
  // the second-order term h * |A(Af)(x)|, for every coordinate map.
  const double h = 1e-3;
  const long long R = 100'000;
  struct Setup {
    const char* text;
    State x;
  };
  int net_index = 0;
  for (const Setup& setup :
       {Setup{"0 <-> S", State{3}},
        Setup{"A -> B\nB -> 2C\n2C -> A\n0 <-> A\n0 <-> B\n0 <-> C", State{2, 1, 3}},
        Setup{"2A <-> A+B\nA+B <-> B\nA <-> 2C\n2C <-> B+C\n2B <-> 0\nC <-> A+C",
              State{3, 2, 2}}}) {
    ReactionNetwork net = parse_network(setup.text);
    auto reactions_seed = 9000 + 17 * net_index++;
    for (int coord = 0; coord < net.species_count(); ++coord) {
      auto f = [coord](const State& z) { return static_cast<double>(z[coord]); };
      double fx = f(setup.x);
      double af = apply_generator(net, f, setup.x);
      double a2f = apply_generator(
          net, [&](const State& z) { return apply_generator(net, f, z); }, setup.x);

      double sum = 0.0, sumsq = 0.0;
      for (long long rep = 0; rep < R; ++rep) {
        RngStream rng = RngStream::for_replicate(reactions_seed, rep);
        double v = f(simulate_until(net, setup.x, h, rng));
        sum += v;
        sumsq += v * v;
      }
      double mean = sum / R;
      double var = std::max(0.0, sumsq / R - mean * mean);
      double se = std::sqrt(var / R) / h;
      double bound = 3.0 * (se + h * std::abs(a2f));
      CAPTURE(setup.text);
      CAPTURE(coord);
      CHECK(std::abs((mean - fx) / h - af) <= bound);
    }
  }
}

}  // TEST_SUITE
