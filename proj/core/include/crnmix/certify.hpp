#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnmix/conservation.hpp"
#include "crnmix/graph.hpp"
#include "crnmix/network.hpp"

namespace crnmix {

enum class CertClass {
  Thm31,
  Thm31Conservative,
  Thm32,
  Cor61,
  Cor61Conservative,
  Cor62,
  Cor62Conservative,
  Cor63,
  Cor63Conservative,
  Cor64,
  Cor64Conservative,
  NotCertified,
};

std::string class_label(CertClass c);

/// Structural ergodicity certificate. `class_label` names the first matching
/// certificate class; `bound_form` and `mixing_order` follow from it. The
/// witnesses carry everything needed to re-check the matched hypotheses.
struct ErgodicityCertificate {
  CertClass cls = CertClass::NotCertified;
  std::string bound_form;    // "B(x)=C(|x|+1)ln(|x|+2)", "B(x)=C(|x|+1)", "B(x)=C (uniform)"
  std::string mixing_order;  // "O(log|x|)", "O(1)", "unknown"

  std::optional<ConservationVector> conservation;
  /// Directed path witnesses keyed by starting complex name (double complexes
  /// for the double-full class, binary complexes for the path corollaries).
  std::map<std::string, std::vector<std::string>> paths;
  /// Unary chain witnesses keyed by starting species name.
  std::map<std::string, std::vector<std::string>> unary_chains;
  std::vector<std::string> inflow_species;
  std::vector<std::string> outflow_species;
  std::vector<std::string> core_reactions;
  std::vector<std::string> species_p;  // species partition for the chain classes
  std::vector<std::string> species_e;

  std::vector<std::string> caveats;
  std::vector<std::string> all_matching_classes;
  /// For NotCertified: the first failed hypothesis clause per candidate class.
  std::vector<std::pair<std::string, std::string>> diagnostics;

  bool certified() const { return cls != CertClass::NotCertified; }
};

/// Tests the network against every certificate class and reports the first
/// match. The outflow-driven classes are evaluated before the double-full
/// class, and within each non-uniform class a conservative core upgrades the
/// bound from C(|x|+1)ln(|x|+2) to C(|x|+1).
ErgodicityCertificate certify(const ReactionNetwork& network);

/// Deterministic JSON rendering (byte-identical for identical input text).
std::string certificate_to_json(const ErgodicityCertificate& cert, int indent = 2);

}  // namespace crnmix
