#pragma once

// Internal sparse reaction representation shared by the drift scanner and the
// simulator hot loops. Not installed.

#include <utility>
#include <vector>

#include "crnmix/network.hpp"
#include "crnmix/state.hpp"

namespace crnmix::detail {

struct CompiledReaction {
  double kappa = 1.0;
  std::vector<std::pair<int, int>> source;  // (species, coefficient), coeff > 0
  std::vector<std::pair<int, int>> jump;    // (species, delta), delta != 0
};

inline std::vector<CompiledReaction> compile(const ReactionNetwork& net) {
  std::vector<CompiledReaction> out;
  for (const Reaction& r : net.reactions) {
    CompiledReaction cr;
    cr.kappa = r.rate_constant;
    for (int i = 0; i < net.species_count(); ++i) {
      if (r.source.coefficients[i] > 0)
        cr.source.push_back({i, r.source.coefficients[i]});
      int d = r.product.coefficients[i] - r.source.coefficients[i];
      if (d != 0) cr.jump.push_back({i, d});
    }
    out.push_back(cr);
  }
  return out;
}

inline double propensity(const CompiledReaction& r, const State& x) {
  double v = r.kappa;
  for (auto [i, c] : r.source) {
    if (x[i] < c) return 0.0;
    for (int k = 0; k < c; ++k) v *= static_cast<double>(x[i] - k);
  }
  return v;
}

}  // namespace crnmix::detail
