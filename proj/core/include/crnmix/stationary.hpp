#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnmix/network.hpp"
#include "crnmix/state.hpp"

namespace crnmix {

class EquilibriumError : public std::runtime_error {
 public:
  explicit EquilibriumError(const std::string& what) : std::runtime_error(what) {}
};

struct NewtonOptions {
  double tolerance = 1e-12;  // on the sup norm of the vector field
  int max_iterations = 200;
};

/// Deterministic mass-action vector field F(c) = sum_r kappa_r c^{y_r} (y'_r - y_r).
std::vector<double> mass_action_field(const ReactionNetwork& network,
                                      const std::vector<double>& c);

/// Damped Newton iteration on F from a strictly positive guess, keeping the
/// iterates positive by step halving. Throws EquilibriumError on
/// non-convergence or a singular Jacobian.
std::vector<double> find_equilibrium(const ReactionNetwork& network,
                                     std::vector<double> guess,
                                     const NewtonOptions& options = {});

/// Net mass-action flow imbalance per complex at concentration c, in the
/// order of network.complexes: inflow(z) - outflow(z).
std::vector<double> complex_balance_residuals(const ReactionNetwork& network,
                                              const std::vector<double>& c);

/// True iff |inflow(z) - outflow(z)| <= tolerance * (1 + flow magnitude) for
/// every complex z.
bool is_complex_balanced(const ReactionNetwork& network, const std::vector<double>& c,
                         double tolerance = 1e-9);

/// Stationary distribution handle: product-form Poisson with mean vector c,
/// or an empirical table over a truncated box.
struct StationaryDistribution {
  enum class Kind { ProductPoisson, Empirical };
  Kind kind = Kind::ProductPoisson;

  std::vector<double> means;  // product-Poisson only

  // Empirical only: sorted (state, probability) pairs over [0, box_radius]^d
  // plus the mass observed outside the box.
  std::vector<std::pair<State, double>> table;
  long long box_radius = 0;
  double out_of_box_mass = 0.0;

  double pmf(const State& z) const;      // product-Poisson point mass
  double log_pmf(const State& z) const;  // product-Poisson, log scale
};

/// Product of independent Poissons with strictly positive means.
StationaryDistribution product_poisson(std::vector<double> means);

/// JSON report: equilibrium, per-complex balance residuals, chosen pi kind.
std::string stationary_report_json(const ReactionNetwork& network,
                                   const std::vector<double>& equilibrium,
                                   const StationaryDistribution& pi,
                                   bool complex_balanced, bool irreducible,
                                   int indent = 2);

struct SimulationConfig;  // ssa.hpp

struct StationaryChoice {
  std::vector<double> equilibrium;
  bool complex_balanced = false;
  bool irreducible = false;
  StationaryDistribution pi;
};

struct StationaryPipelineOptions {
  std::vector<double> guess;        // defaults to all ones
  double balance_tolerance = 1e-9;
  NewtonOptions newton;
  long long probe_box = 20;         // reachability probe box
  double relax_time = 50.0;         // empirical fallback horizon
};

/// Full pi selection: find the equilibrium, test complex balance, probe
/// irreducibility around x0 (clamped into the probe box). Product-form pi is
/// returned only when both checks pass; otherwise pi is estimated empirically
/// by a long SSA run over [0, box_radius]^d.
StationaryChoice choose_stationary(const ReactionNetwork& network, const State& x0,
                                   long long box_radius, const SimulationConfig& sim,
                                   const StationaryPipelineOptions& options = {});

}  // namespace crnmix
