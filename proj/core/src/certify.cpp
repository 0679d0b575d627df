#include "crnmix/certify.hpp"

#include "json.hpp"

#include <algorithm>

namespace crnmix {

std::string class_label(CertClass c) {
  switch (c) {
    case CertClass::Thm31: return "Thm3.1";
    case CertClass::Thm31Conservative: return "Thm3.1-conservative";
    case CertClass::Thm32: return "Thm3.2";
    case CertClass::Cor61: return "Cor6.1";
    case CertClass::Cor61Conservative: return "Cor6.1-conservative";
    case CertClass::Cor62: return "Cor6.2";
    case CertClass::Cor62Conservative: return "Cor6.2-conservative";
    case CertClass::Cor63: return "Cor6.3";
    case CertClass::Cor63Conservative: return "Cor6.3-conservative";
    case CertClass::Cor64: return "Cor6.4";
    case CertClass::Cor64Conservative: return "Cor6.4-conservative";
    case CertClass::NotCertified: return "NotCertified";
  }
  return "NotCertified";
}

namespace {

const char* kBoundLog = "B(x)=C(|x|+1)ln(|x|+2)";
const char* kBoundLinear = "B(x)=C(|x|+1)";
const char* kBoundUniform = "B(x)=C (uniform)";
const char* kReducibleCaveat = "state space may be reducible; the bound holds on the closed communication class of the initial state";
const char* kPointMassCaveat = "stationary distribution may be a point mass";
const char* kNotCertifiedNote = "the implemented conditions are sufficient, not necessary: this is not a claim of non-ergodicity";

struct ClassCheck {
  bool matched = false;
  std::string failed_clause;
  bool conservative = false;  // conservative upgrade applies
  std::optional<ConservationVector> w;
  std::map<std::string, std::vector<std::string>> paths;
  std::map<std::string, std::vector<std::string>> chains;
  std::vector<int> sp, se;
};

struct Engine {
  const ReactionNetwork& net;
  FlowDecomposition flow;
  ReactionNetwork core;

  explicit Engine(const ReactionNetwork& n) : net(n), flow(flow_decomposition(n)) {
    core = subnetwork(net, flow.core_reactions);
  }

  bool all_species_in(const std::set<int>& s) const {
    return static_cast<int>(s.size()) == net.species_count();
  }

  std::string first_missing(const std::set<int>& have) const {
    for (int i = 0; i < net.species_count(); ++i)
      if (!have.count(i)) return net.species[i].name;
    return {};
  }

  std::vector<std::string> name_path(const std::vector<int>& complex_path) const {
    std::vector<std::string> out;
    for (int c : complex_path) out.push_back(net.complex_name(net.complexes[c]));
    return out;
  }

  std::vector<std::string> name_species_path(const std::vector<int>& path) const {
    std::vector<std::string> out;
    for (int s : path) out.push_back(net.species[s].name);
    return out;
  }

  // Conservativity of the pre-flow network. The double-full class never uses
  // it; the open class attributes every flow to the theorem's construction,
  // while the outflow corollaries only account for the outflows they add, so
  // native inflows stay in the tested reaction set.
  std::optional<ConservationVector> conservative_witness(bool keep_inflows) const {
    std::vector<Reaction> rs;
    for (int i : flow.core_reactions) rs.push_back(net.reactions[i]);
    if (keep_inflows)
      for (int i : flow.inflow_reactions) rs.push_back(net.reactions[i]);
    return find_conservation_vector(net.species_count(), rs);
  }

  // Core structure shared by Thm3.1 and Cor6.1: binary, weakly reversible,
  // single linkage class.
  bool core_structure_ok(std::string* why) const {
    if (!is_binary(core)) {
      *why = "core network is not binary";
      return false;
    }
    auto classes = linkage_classes(core);
    if (classes.size() != 1) {
      *why = "core network has " + std::to_string(classes.size()) +
             " linkage classes (need exactly 1)";
      return false;
    }
    if (!is_weakly_reversible(core)) {
      *why = "core network is not weakly reversible";
      return false;
    }
    return true;
  }

  // Directed path to a low-order complex from every complex selected by
  // `pred`; fills witness paths keyed by complex name.
  bool paths_from_all(bool (Complex::*pred)() const, ClassCheck* chk,
                      const char* kind) {
    for (int c = 0; c < net.complex_count(); ++c) {
      const Complex& y = net.complexes[c];
      if (!(y.*pred)()) continue;
      auto p = path_to_low_order(net, c);
      if (!p) {
        chk->failed_clause = std::string("no directed path from ") + kind +
                             " complex " + net.complex_name(y) +
                             " to a unary or zero complex";
        return false;
      }
      chk->paths[net.complex_name(y)] = name_path(*p);
    }
    return true;
  }

  ClassCheck thm31() {
    ClassCheck chk;
    if (!all_species_in(flow.inflow_species)) {
      chk.failed_clause = "missing inflow 0 -> " + first_missing(flow.inflow_species);
      return chk;
    }
    if (!all_species_in(flow.outflow_species)) {
      chk.failed_clause = "missing outflow " + first_missing(flow.outflow_species) + " -> 0";
      return chk;
    }
    if (!core_structure_ok(&chk.failed_clause)) return chk;
    chk.matched = true;
    chk.w = conservative_witness(/*keep_inflows=*/false);
    chk.conservative = chk.w.has_value();
    return chk;
  }

  ClassCheck thm32() {
    ClassCheck chk;
    if (!is_binary(net)) {
      chk.failed_clause = "network is not binary";
      return chk;
    }
    for (int i = 0; i < net.species_count(); ++i) {
      Complex dbl = unary_complex(i, net.species_count());
      dbl.coefficients[i] = 2;
      if (net.complex_index(dbl) < 0) {
        chk.failed_clause = "not double-full: complex 2" + net.species[i].name + " missing";
        return chk;
      }
    }
    if (!paths_from_all(&Complex::is_double, &chk, "double")) return chk;
    chk.matched = true;
    return chk;
  }

  ClassCheck cor61() {
    ClassCheck chk;
    if (!all_species_in(flow.outflow_species)) {
      chk.failed_clause = "missing outflow " + first_missing(flow.outflow_species) + " -> 0";
      return chk;
    }
    if (!core_structure_ok(&chk.failed_clause)) return chk;
    chk.matched = true;
    chk.w = conservative_witness(/*keep_inflows=*/true);
    chk.conservative = chk.w.has_value();
    return chk;
  }

  ClassCheck cor62() {
    ClassCheck chk;
    if (!is_binary(net)) {
      chk.failed_clause = "network is not binary";
      return chk;
    }
    if (!all_species_in(flow.outflow_species)) {
      chk.failed_clause = "missing outflow " + first_missing(flow.outflow_species) + " -> 0";
      return chk;
    }
    if (!paths_from_all(&Complex::is_binary_complex, &chk, "binary")) return chk;
    chk.matched = true;
    chk.w = conservative_witness(/*keep_inflows=*/true);
    chk.conservative = chk.w.has_value();
    return chk;
  }

  // Complex set of the pre-flow network seen by the chain corollaries: core
  // complexes plus the unary complexes contributed by native inflows.
  bool species_unary_in_preflow(int s) const {
    Complex u = unary_complex(s, net.species_count());
    if (core.complex_index(u) >= 0) return true;
    return flow.inflow_species.count(s) > 0;
  }

  ClassCheck cor63() {
    ClassCheck chk;
    if (!is_binary(net)) {
      chk.failed_clause = "network is not binary";
      return chk;
    }
    if (flow.outflow_species.size() != 1) {
      chk.failed_clause = "outflows must target exactly one species (found " +
                          std::to_string(flow.outflow_species.size()) + ")";
      return chk;
    }
    const int designated = *flow.outflow_species.begin();
    for (int i = 0; i < net.species_count(); ++i)
      if (!species_unary_in_preflow(i)) {
        chk.failed_clause = "species " + net.species[i].name +
                            " does not appear as a unary complex";
        return chk;
      }
    if (!paths_from_all(&Complex::is_binary_complex, &chk, "binary")) return chk;
    for (int i = 0; i < net.species_count(); ++i) {
      if (i == designated) continue;
      auto chain = unary_chain(net, i, {designated});
      if (!chain) {
        chk.failed_clause = "no unary chain from " + net.species[i].name + " to " +
                            net.species[designated].name;
        return chk;
      }
      chk.chains[net.species[i].name] = name_species_path(*chain);
      chk.sp.push_back(i);
    }
    chk.se.push_back(designated);
    chk.matched = true;
    chk.w = conservative_witness(/*keep_inflows=*/true);
    chk.conservative = chk.w.has_value();
    return chk;
  }

  ClassCheck cor64() {
    ClassCheck chk;
    if (!is_binary(net)) {
      chk.failed_clause = "network is not binary";
      return chk;
    }
    if (flow.outflow_species.empty()) {
      chk.failed_clause = "no outflow species (S_e would be empty)";
      return chk;
    }
    if (!paths_from_all(&Complex::is_binary_complex, &chk, "binary")) return chk;
    // Greedy partition: S_e = the outflow species, S_p = the rest.
    std::set<int> se(flow.outflow_species);
    for (int i = 0; i < net.species_count(); ++i) {
      if (se.count(i)) {
        chk.se.push_back(i);
        continue;
      }
      chk.sp.push_back(i);
      auto chain = unary_chain(net, i, se);
      if (!chain) {
        chk.failed_clause = "no unary chain from " + net.species[i].name +
                            " into the outflow species set";
        return chk;
      }
      chk.chains[net.species[i].name] = name_species_path(*chain);
    }
    chk.matched = true;
    chk.w = conservative_witness(/*keep_inflows=*/true);
    chk.conservative = chk.w.has_value();
    return chk;
  }
};

CertClass resolve(CertClass plain, CertClass conservative, const ClassCheck& chk) {
  return chk.conservative ? conservative : plain;
}

}  // namespace

ErgodicityCertificate certify(const ReactionNetwork& net) {
  Engine eng(net);

  struct Candidate {
    const char* name;
    CertClass plain, conservative;
    ClassCheck chk;
    bool uniform = false;
  };
  // Evaluation order: the outflow-driven Lyapunov classes first, the uniform
  // double-full class as the final fallback. All matches are reported in
  // `all_matching_classes` either way.
  std::vector<Candidate> cands;
  cands.push_back({"Thm3.1", CertClass::Thm31, CertClass::Thm31Conservative, eng.thm31()});
  cands.push_back({"Cor6.1", CertClass::Cor61, CertClass::Cor61Conservative, eng.cor61()});
  cands.push_back({"Cor6.2", CertClass::Cor62, CertClass::Cor62Conservative, eng.cor62()});
  cands.push_back({"Cor6.3", CertClass::Cor63, CertClass::Cor63Conservative, eng.cor63()});
  cands.push_back({"Cor6.4", CertClass::Cor64, CertClass::Cor64Conservative, eng.cor64()});
  cands.push_back({"Thm3.2", CertClass::Thm32, CertClass::Thm32, eng.thm32(), true});

  ErgodicityCertificate cert;
  for (const auto& s : eng.flow.inflow_species)
    cert.inflow_species.push_back(net.species[s].name);
  for (const auto& s : eng.flow.outflow_species)
    cert.outflow_species.push_back(net.species[s].name);
  for (int i : eng.flow.core_reactions)
    cert.core_reactions.push_back(net.reaction_name(net.reactions[i]));

  // All matching classes, strongest conclusion (the uniform bound) first.
  if (cands.back().chk.matched)
    cert.all_matching_classes.push_back(
        class_label(resolve(cands.back().plain, cands.back().conservative, cands.back().chk)));
  for (size_t k = 0; k + 1 < cands.size(); ++k)
    if (cands[k].chk.matched)
      cert.all_matching_classes.push_back(
          class_label(resolve(cands[k].plain, cands[k].conservative, cands[k].chk)));

  const Candidate* hit = nullptr;
  for (const Candidate& c : cands)
    if (c.chk.matched) {
      hit = &c;
      break;
    }

  if (!hit) {
    cert.cls = CertClass::NotCertified;
    cert.bound_form = "";
    cert.mixing_order = "unknown";
    for (const Candidate& c : cands)
      cert.diagnostics.emplace_back(c.name, c.chk.failed_clause);
    cert.caveats.push_back(kNotCertifiedNote);
    return cert;
  }

  const ClassCheck& chk = hit->chk;
  cert.cls = resolve(hit->plain, hit->conservative, chk);
  if (hit->uniform) {
    cert.bound_form = kBoundUniform;
    cert.mixing_order = "O(1)";
  } else {
    cert.bound_form = chk.conservative ? kBoundLinear : kBoundLog;
    cert.mixing_order = "O(log|x|)";
  }
  if (chk.conservative) cert.conservation = chk.w;
  cert.paths = chk.paths;
  cert.unary_chains = chk.chains;
  for (int i : chk.sp) cert.species_p.push_back(net.species[i].name);
  for (int i : chk.se) cert.species_e.push_back(net.species[i].name);

  switch (hit->plain) {
    case CertClass::Thm32:
      cert.caveats.push_back(kReducibleCaveat);
      break;
    case CertClass::Cor61:
      cert.caveats.push_back(kReducibleCaveat);
      break;
    case CertClass::Cor62:
    case CertClass::Cor63:
    case CertClass::Cor64:
      cert.caveats.push_back(kReducibleCaveat);
      cert.caveats.push_back(kPointMassCaveat);
      break;
    default:
      break;  // Thm3.1 networks are open, hence irreducible on the full lattice
  }
  return cert;
}

std::string certificate_to_json(const ErgodicityCertificate& cert, int indent) {
  nlohmann::ordered_json j;
  j["class_label"] = class_label(cert.cls);
  j["bound_form"] = cert.bound_form;
  j["mixing_order"] = cert.mixing_order;

  nlohmann::ordered_json w;
  if (cert.conservation) {
    w["conservation_vector"] = cert.conservation->weights;
  } else {
    w["conservation_vector"] = nullptr;
  }
  w["paths"] = cert.paths;
  w["unary_chains"] = cert.unary_chains;
  w["flow"] = {{"inflow_species", cert.inflow_species},
               {"outflow_species", cert.outflow_species},
               {"core_reactions", cert.core_reactions}};
  w["species_partition"] = {{"S_p", cert.species_p}, {"S_e", cert.species_e}};
  j["witnesses"] = w;
  j["caveats"] = cert.caveats;
  j["all_matching_classes"] = cert.all_matching_classes;
  if (!cert.diagnostics.empty()) {
    nlohmann::ordered_json d;
    for (const auto& [cls, why] : cert.diagnostics) d[cls] = why;
    j["diagnostics"] = d;
  }
  return j.dump(indent);
}

}  // namespace crnmix
