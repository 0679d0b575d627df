#pragma once

#include <compare>
#include <string>
#include <vector>

namespace crnmix {

/// One chemical species. `index` is the 0-based position in the network's
/// species enumeration, fixed by first textual appearance.
struct Species {
  std::string name;
  int index = 0;
};

/// A complex: a non-negative integer combination of species, stored as the
/// full-length stoichiometric vector. The zero vector is the empty complex.
struct Complex {
  std::vector<int> coefficients;

  int order() const;  // l1 norm, sum of coefficients
  bool is_zero() const { return order() == 0; }
  bool is_unary() const { return order() == 1; }
  bool is_binary_complex() const { return order() == 2; }
  /// True for complexes of the form 2*S_i.
  bool is_double() const;
  /// Index of the single species for unary complexes, -1 otherwise.
  int unary_species() const;

  auto operator<=>(const Complex&) const = default;
};

/// Unary complex e_i of dimension d.
Complex unary_complex(int species_index, int dimension);

/// A directed reaction edge source -> product with mass-action rate constant.
struct Reaction {
  Complex source;
  Complex product;
  double rate_constant = 1.0;

  /// Net state change product - source.
  std::vector<int> net_change() const;
};

/// A reaction network: species, reactions, and the deduplicated complex set
/// (every source and every product, in order of first appearance).
struct ReactionNetwork {
  std::vector<Species> species;
  std::vector<Reaction> reactions;
  std::vector<Complex> complexes;

  int species_count() const { return static_cast<int>(species.size()); }
  int reaction_count() const { return static_cast<int>(reactions.size()); }
  int complex_count() const { return static_cast<int>(complexes.size()); }

  /// Index into `complexes`, or -1 if absent.
  int complex_index(const Complex& c) const;
  /// Index into `species`, or -1 if absent.
  int species_index(const std::string& name) const;

  /// Renders a complex using the network's species names, e.g. "A+2B"; the
  /// zero complex renders as "0".
  std::string complex_name(const Complex& c) const;
  std::string reaction_name(const Reaction& r) const;

  /// Renders the network back to DSL text, one reaction per line, preserving
  /// species first-appearance order and reaction order.
  std::string to_dsl() const;
};

/// True iff every complex has order <= 2.
bool is_binary(const ReactionNetwork& network);

/// Rebuilds the complex list from the reaction list and validates the basic
/// invariants (distinct reactions, positive rates, source != product).
/// Throws std::invalid_argument on violation.
void finalize_network(ReactionNetwork& network);

}  // namespace crnmix
