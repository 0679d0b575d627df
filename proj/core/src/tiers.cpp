#include "crnmix/tiers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace crnmix {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Positive rational literal: "3", "3/2".
Rational parse_rational(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!all_digits(s)) throw std::invalid_argument("bad rational '" + s + "'");
    return Rational(std::stoll(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("bad rational '" + s + "'");
  return Rational(std::stoll(num), std::stoll(den));
}

// Monomial spec: n, n^a, n*c, n^a*c, c*n, c*n^a.
SpeciesGrowth parse_monomial(const std::string& spec) {
  SpeciesGrowth g;
  g.unbounded = true;
  std::string s = spec;
  size_t npos = s.find('n');
  if (npos == std::string::npos)
    throw std::invalid_argument("profile entry '" + spec + "' is neither an integer limit nor a monomial in n");
  std::string before = trim(s.substr(0, npos));
  std::string after = trim(s.substr(npos + 1));
  if (!before.empty()) {
    if (before.back() != '*')
      throw std::invalid_argument("expected 'c*n...' in '" + spec + "'");
    g.scale = parse_rational(trim(before.substr(0, before.size() - 1)));
  }
  if (!after.empty()) {
    if (after[0] == '^') {
      std::string rest = trim(after.substr(1));
      size_t star = rest.find('*');
      if (star == std::string::npos) {
        g.exponent = parse_rational(trim(rest));
      } else {
        g.exponent = parse_rational(trim(rest.substr(0, star)));
        g.scale = g.scale * parse_rational(trim(rest.substr(star + 1)));
      }
    } else if (after[0] == '*') {
      g.scale = g.scale * parse_rational(trim(after.substr(1)));
    } else {
      throw std::invalid_argument("unexpected text after 'n' in '" + spec + "'");
    }
  }
  return g;
}

}  // namespace

void GrowthProfile::validate() const {
  bool any_unbounded = false;
  for (const SpeciesGrowth& g : entries) {
    if (g.unbounded) {
      any_unbounded = true;
      if (!(g.exponent > Rational(0)))
        throw std::invalid_argument("growth exponent must be positive");
      if (!(g.scale > Rational(0)))
        throw std::invalid_argument("growth scale must be positive");
    } else if (g.limit < 0) {
      throw std::invalid_argument("bounded limit must be non-negative");
    }
  }
  if (!any_unbounded)
    throw std::invalid_argument("a growth profile needs at least one unbounded species");
}

GrowthProfile GrowthProfile::parse(const std::string& text, const ReactionNetwork& net) {
  GrowthProfile p;
  p.entries.assign(net.species.size(), SpeciesGrowth{});  // default Bounded(0)

  std::string rest = text;
  size_t pos = 0;
  while (pos <= rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string item = trim(rest.substr(pos, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - pos));
    if (!item.empty()) {
      size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("profile entry '" + item + "' is missing ':'");
      std::string name = trim(item.substr(0, colon));
      std::string spec = trim(item.substr(colon + 1));
      int idx = net.species_index(name);
      if (idx < 0) throw std::invalid_argument("unknown species '" + name + "' in profile");
      if (all_digits(spec)) {
        p.entries[idx] = SpeciesGrowth{false, Rational(1), Rational(1), std::stoll(spec)};
      } else {
        p.entries[idx] = parse_monomial(spec);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  p.validate();
  return p;
}

TierPartition tier_partition(const ReactionNetwork& net, const GrowthProfile& profile) {
  profile.validate();
  if (profile.entries.size() != static_cast<size_t>(net.species_count()))
    throw std::invalid_argument("profile dimension does not match the network");

  const int n = net.complex_count();
  TierPartition part;
  part.growth_exponent.resize(n);
  part.tier_of.assign(n, 0);

  // Leading exponent of (x_n v 1)^y: bounded coordinates contribute nothing,
  // unbounded ones add y_i * alpha_i.
  for (int c = 0; c < n; ++c) {
    Rational e(0);
    const auto& y = net.complexes[c].coefficients;
    for (size_t i = 0; i < y.size(); ++i)
      if (profile.entries[i].unbounded && y[i] > 0)
        e = e + static_cast<long long>(y[i]) * profile.entries[i].exponent;
    part.growth_exponent[c] = e;
  }

  std::map<Rational, std::vector<int>, std::greater<Rational>> groups;
  for (int c = 0; c < n; ++c) groups[part.growth_exponent[c]].push_back(c);
  for (const auto& [e, members] : groups) {
    (void)e;
    part.tiers.push_back(members);  // members already in complex-enumeration order
    for (int c : members) part.tier_of[c] = static_cast<int>(part.tiers.size());
  }
  return part;
}

Dominance dominance(const TierPartition& part, int y, int y_other) {
  if (y < 0 || y >= static_cast<int>(part.tier_of.size()) || y_other < 0 ||
      y_other >= static_cast<int>(part.tier_of.size()))
    throw std::invalid_argument("unknown complex in dominance query");
  int a = part.tier_of[y], b = part.tier_of[y_other];
  if (a < b) return Dominance::Succeeds;
  if (a > b) return Dominance::Precedes;
  return Dominance::Equivalent;
}

double intensity_ratio_limit(const ReactionNetwork& net, const Reaction& reaction,
                             const GrowthProfile& profile) {
  profile.validate();
  double value = reaction.rate_constant;
  const auto& y = reaction.source.coefficients;
  for (int i = 0; i < net.species_count(); ++i) {
    if (y[i] == 0) continue;
    const SpeciesGrowth& g = profile.entries[i];
    if (g.unbounded) continue;  // falling factorial over x^y tends to 1
    if (g.limit < y[i]) return 0.0;  // intensity vanishes along the sequence
    double ff = 1.0;
    for (int k = 0; k < y[i]; ++k) ff *= static_cast<double>(g.limit - k);
    double denom = std::pow(static_cast<double>(std::max<long long>(g.limit, 1)), y[i]);
    value *= ff / denom;
  }
  return value;
}

std::string tier_table(const ReactionNetwork& net, const TierPartition& part) {
  std::string out;
  for (size_t t = 0; t < part.tiers.size(); ++t) {
    out += "tier " + std::to_string(t + 1) + ":";
    for (int c : part.tiers[t]) out += " " + net.complex_name(net.complexes[c]);
    out += "\n";
  }
  return out;
}

}  // namespace crnmix
