#pragma once

#include <optional>
#include <set>
#include <vector>

#include "crnmix/network.hpp"

namespace crnmix {

/// Weakly connected components of the reaction graph, as lists of complex
/// indices. Each class is sorted by complex (lexicographic on coefficient
/// vectors) and classes are ordered by their smallest member.
std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& network);

/// True iff every linkage class is strongly connected.
bool is_weakly_reversible(const ReactionNetwork& network);

/// Strongly connected component id per complex (ids are arbitrary but
/// deterministic). Exposed for the structural invariants tests.
std::vector<int> strongly_connected_components(const ReactionNetwork& network);

/// True iff the complex 2*S_i is present for every species i. Vacuously true
/// when there are no species.
bool is_double_full(const ReactionNetwork& network);

/// Shortest directed path (list of complex indices) from `start_complex` to
/// any complex of order <= 1, or nullopt. Among equal-length paths the
/// lexicographically smallest complex sequence is returned.
std::optional<std::vector<int>> path_to_low_order(const ReactionNetwork& network,
                                                  int start_complex);

/// Directed path S_i -> S_j -> ... -> S_k with k in `targets`, using only
/// reactions whose source and product are both unary. Returned as species
/// indices. A species already in `targets` yields the single-node path.
std::optional<std::vector<int>> unary_chain(const ReactionNetwork& network,
                                            int from_species,
                                            const std::set<int>& targets);

/// Classification of reactions into inflows (0 -> S_i), outflows (S_i -> 0)
/// and everything else (the core).
struct FlowDecomposition {
  std::vector<int> core_reactions;   // indices into network.reactions
  std::vector<int> inflow_reactions;
  std::vector<int> outflow_reactions;
  std::set<int> inflow_species;
  std::set<int> outflow_species;
};

FlowDecomposition flow_decomposition(const ReactionNetwork& network);

/// The sub-network spanned by a subset of reactions (species set unchanged).
ReactionNetwork subnetwork(const ReactionNetwork& network,
                           const std::vector<int>& reaction_indices);

}  // namespace crnmix
