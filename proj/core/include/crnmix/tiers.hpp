#pragma once

#include <string>
#include <vector>

#include "crnmix/network.hpp"
#include "crnmix/rational.hpp"

namespace crnmix {

/// Per-species behavior along a monomial growth profile x_n: either the count
/// diverges like scale * n^exponent, or it converges to an integer limit.
struct SpeciesGrowth {
  bool unbounded = false;
  Rational exponent{1};   // alpha > 0, unbounded only
  Rational scale{1};      // c > 0, unbounded only
  long long limit = 0;    // bounded only, >= 0
};

/// A monomial growth profile; at least one species must be unbounded.
struct GrowthProfile {
  std::vector<SpeciesGrowth> entries;

  /// Throws std::invalid_argument if no species diverges or a parameter is
  /// out of range.
  void validate() const;

  /// Parses the CLI syntax "A:n, B:0, C:n^2*3": per species either an integer
  /// limit or a monomial c*n^alpha written as n, n^a, n*c, n^a*c or c*n^a.
  /// Species missing from the string default to Bounded(0).
  static GrowthProfile parse(const std::string& text, const ReactionNetwork& network);
};

/// D-type tier partition of the complex set along a profile: complexes are
/// grouped by the leading exponent of (x_n v 1)^y and ordered by descending
/// growth, tier 1 first.
struct TierPartition {
  std::vector<std::vector<int>> tiers;  // complex indices, tier 1 first
  std::vector<int> tier_of;             // 1-based tier number per complex
  std::vector<Rational> growth_exponent;  // leading exponent per complex
};

TierPartition tier_partition(const ReactionNetwork& network, const GrowthProfile& profile);

enum class Dominance { Succeeds, Equivalent, Precedes };

/// Compares tier indices: Succeeds when y sits in a strictly faster tier than
/// y_other (y dominates), Precedes in the opposite case.
Dominance dominance(const TierPartition& partition, int complex_y, int complex_y_other);

/// lim lambda_{y->y'}(x_n) / (x_n v 1)^y along the profile: zero when a
/// bounded coordinate sits below the source stoichiometry, otherwise the rate
/// constant times the bounded coordinates' falling-factorial correction.
double intensity_ratio_limit(const ReactionNetwork& network, const Reaction& reaction,
                             const GrowthProfile& profile);

/// Plain-text tier table (one row per tier) for CLI output.
std::string tier_table(const ReactionNetwork& network, const TierPartition& partition);

}  // namespace crnmix
