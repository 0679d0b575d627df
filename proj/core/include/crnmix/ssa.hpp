#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnmix/network.hpp"
#include "crnmix/rng.hpp"
#include "crnmix/state.hpp"

namespace crnmix {

/// Raised when a trajectory exceeds the event cap (the operational stand-in
/// for an explosion), or when the exploded-replicate fraction of an ensemble
/// crosses the configured threshold.
class ExplosionError : public std::runtime_error {
 public:
  explicit ExplosionError(const std::string& what) : std::runtime_error(what) {}
};

struct SimulationConfig {
  std::uint64_t seed = 1;
  long long replicates = 100'000;
  long long max_events = 10'000'000;  // per trajectory
  int threads = 1;
  double explosion_tolerance = 0.001;  // max tolerated exploded fraction
};

/// Exact (direct method) sample of X(t) given X(0) = x0, consuming the given
/// stream. Throws ExplosionError past `max_events` events.
State simulate_until(const ReactionNetwork& network, const State& x0, double t,
                     RngStream& rng, long long max_events = 10'000'000);

/// Empirical law of X(t): sorted in-box (state, count) table plus the
/// fraction of replicates ending outside [0, box_radius]^d. Frequencies are
/// relative to the non-exploded replicate count.
struct TransientDistribution {
  State origin;
  double time = 0.0;
  long long box_radius = 0;
  std::vector<std::pair<State, long long>> counts;  // sorted by state
  long long replicates = 0;   // requested
  long long tabulated = 0;    // non-exploded
  long long exploded = 0;
  long long out_of_box = 0;
  std::vector<long long> coordinate_sums;  // over all tabulated endpoints

  double frequency(size_t i) const {
    return static_cast<double>(counts[i].second) / static_cast<double>(tabulated);
  }
  double out_of_box_mass() const {
    return static_cast<double>(out_of_box) / static_cast<double>(tabulated);
  }
  /// Mean endpoint, including out-of-box endpoints.
  std::vector<double> mean() const;
};

TransientDistribution transient_distribution(const ReactionNetwork& network,
                                             const State& x0, double t,
                                             const SimulationConfig& config,
                                             long long box_radius);

/// Empirical laws of X(t_k) for an increasing time grid, sharing one
/// trajectory per replicate across the grid. Equivalent in law to independent
/// ensembles per grid point; deterministic given (network, x0, grid, seed).
std::vector<TransientDistribution> transient_distribution_grid(
    const ReactionNetwork& network, const State& x0, const std::vector<double>& t_grid,
    const SimulationConfig& config, long long box_radius);

/// Reachability probe within [0, box_radius]^d: true iff x0 reaches the
/// origin and the origin reaches x0 through one-jump transitions inside the
/// box. A probe, not a proof of irreducibility.
bool irreducibility_probe(const ReactionNetwork& network, const State& x0,
                          long long box_radius);

/// CSV: one row per in-box state (coordinates, then frequency).
std::string transient_to_csv(const ReactionNetwork& network,
                             const TransientDistribution& dist);

/// JSON summary: mean vector, out-of-box mass, replicate accounting.
std::string transient_summary_json(const ReactionNetwork& network,
                                   const TransientDistribution& dist, int indent = 2);

}  // namespace crnmix
