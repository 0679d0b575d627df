#pragma once

#include <optional>
#include <vector>

#include "crnmix/network.hpp"

namespace crnmix {

/// A strictly positive vector w with w . (product - source) == 0 for every
/// reaction it was computed from. Stored as the smallest integer
/// representative of the canonical vertex (the minimizer of sum w_i over
/// {w : Gamma^T w = 0, w >= 1}).
struct ConservationVector {
  std::vector<long long> weights;
};

/// Exact decision, in rational arithmetic, of whether a strictly positive
/// conservation vector exists for the given reactions. `species_count` fixes
/// the dimension; `reactions` is any reaction subset (often a network core).
/// Returns the canonical witness or nullopt.
std::optional<ConservationVector> find_conservation_vector(
    int species_count, const std::vector<Reaction>& reactions);

}  // namespace crnmix
