#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crnmix/errors.hpp"
#include "crnmix/network.hpp"
#include "crnmix/state.hpp"

namespace crnmix {

/// Mass-action intensity: rate constant times the falling-factorial product,
/// zero whenever some count is below the source stoichiometry.
double intensity(const Reaction& reaction, const State& x);

/// Total intensity over all reactions.
double total_intensity(const ReactionNetwork& network, const State& x);

/// Applies the generator: sum of lambda(x) * (f(x + net) - f(x)). Neighbors
/// with a negative coordinate never contribute (their intensity is zero).
double apply_generator(const ReactionNetwork& network,
                       const std::function<double(const State&)>& f,
                       const State& x);

/// V(x) = sum_i [x_i (ln x_i - 1) + 1], the zero-count term equal to 1.
double lyapunov_V(const State& x);

/// W(x) = w . x for a positive weight vector.
double lyapunov_W(const std::vector<double>& w, const State& x);

enum class LyapunovKind { LogV, LinearW };

struct DriftScanConfig {
  LyapunovKind kind = LyapunovKind::LogV;
  double a = 0.05;
  double delta = 0.0;  // 0 or 0.5
  long long box_radius = 60;
  std::vector<double> weights;  // required for LinearW
  long long state_cap = 50'000'000;
  int threads = 1;
};

/// Empirical Foster-Lyapunov drift witness over the box [0,N]^d:
/// b is the exhaustive maximum of AV(x) + a * V(x)^(1+delta), and
/// `negative_on_shell` records whether AV < 0 on every outer face state.
struct DriftReport {
  LyapunovKind kind = LyapunovKind::LogV;
  double a = 0.0;
  double delta = 0.0;
  double b = 0.0;
  State argmax;
  bool negative_on_shell = false;
  double shell_max_AV = 0.0;
  long long box_radius = 0;
  long long states_scanned = 0;
};

/// Exhaustive scan of the drift inequality over [0,N]^d. Throws
/// ResourceError when the box exceeds `state_cap` states. The reduction is a
/// total-order max on (value, state), so results do not depend on `threads`.
DriftReport drift_scan(const ReactionNetwork& network, const DriftScanConfig& config);

std::string drift_report_to_json(const ReactionNetwork& network,
                                 const DriftReport& report, int indent = 2);

/// CSV dump of g(x) = AV(x) + a V(x)^(1+delta) over a 2-D slice: the first
/// two coordinates vary, the rest are frozen at the report argmax.
std::string drift_slice_csv(const ReactionNetwork& network,
                            const DriftScanConfig& config,
                            const DriftReport& report);

}  // namespace crnmix
