#pragma once

#include <string>
#include <vector>

#include "crnmix/ssa.hpp"
#include "crnmix/stationary.hpp"

namespace crnmix {

/// Truncated total-variation estimate. `tv` is half the l1 difference over
/// the in-box states (the convention used to draw the convergence curves);
/// `tv_conservative` adds half of each distribution's out-of-box mass, making
/// it an upper-bound surrogate for the untruncated distance.
struct TvResult {
  double tv = 0.0;
  double tv_conservative = 0.0;
  double out_p = 0.0;
  double out_q = 0.0;
};

TvResult tv_distance(const TransientDistribution& p, const StationaryDistribution& q,
                     long long box_radius);

/// Half l1 distance between two pmf tables over a common box; masses outside
/// the tables are treated by the same in-box/out-of-box split.
TvResult tv_tables(const std::vector<std::pair<State, double>>& p, double out_p,
                   const std::vector<std::pair<State, double>>& q, double out_q);

/// Enumerates a product-Poisson distribution over [0, box]^d as a sorted
/// table (used by oracles and by the empirical-vs-enumerated comparisons).
std::vector<std::pair<State, double>> enumerate_product_poisson(
    const std::vector<double>& means, long long box_radius, double* out_mass);

struct MixingTimeEstimate {
  State origin;
  long long m = 0;  // the initial-condition parameter (sup-norm of origin)
  double epsilon = 0.1;
  std::vector<double> t_grid;
  std::vector<TvResult> tv_curve;
  double tau = 0.0;
  bool not_reached = false;
  long long replicates = 0;
};

/// TV curve against pi over the grid (one shared simulation pass) and the
/// first grid time at which the curve drops to epsilon. The raw curve is
/// reported: no monotone smoothing, no interpolation between grid points.
MixingTimeEstimate estimate_mixing_time(const ReactionNetwork& network, const State& x0,
                                        const StationaryDistribution& pi, double epsilon,
                                        const std::vector<double>& t_grid,
                                        const SimulationConfig& config,
                                        long long box_radius);

/// Long-format curve CSV: t,tv,tv_conservative,m,replicates.
std::string curves_csv(const std::vector<MixingTimeEstimate>& estimates);

/// Summary CSV: m,tau,epsilon,not_reached.
std::string summary_csv(const std::vector<MixingTimeEstimate>& estimates);

}  // namespace crnmix
