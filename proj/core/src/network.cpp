#include "crnmix/network.hpp"

#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crnmix {

int Complex::order() const {
  return std::accumulate(coefficients.begin(), coefficients.end(), 0);
}

bool Complex::is_double() const {
  if (order() != 2) return false;
  for (int c : coefficients)
    if (c == 2) return true;
  return false;
}

int Complex::unary_species() const {
  if (order() != 1) return -1;
  for (int i = 0; i < static_cast<int>(coefficients.size()); ++i)
    if (coefficients[i] == 1) return i;
  return -1;
}

Complex unary_complex(int species_index, int dimension) {
  Complex c;
  c.coefficients.assign(dimension, 0);
  c.coefficients[species_index] = 1;
  return c;
}

std::vector<int> Reaction::net_change() const {
  std::vector<int> net(product.coefficients.size(), 0);
  for (size_t i = 0; i < net.size(); ++i)
    net[i] = product.coefficients[i] - source.coefficients[i];
  return net;
}

int ReactionNetwork::complex_index(const Complex& c) const {
  for (int i = 0; i < complex_count(); ++i)
    if (complexes[i] == c) return i;
  return -1;
}

int ReactionNetwork::species_index(const std::string& name) const {
  for (const Species& s : species)
    if (s.name == name) return s.index;
  return -1;
}

std::string ReactionNetwork::complex_name(const Complex& c) const {
  if (c.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < c.coefficients.size(); ++i) {
    int k = c.coefficients[i];
    if (k == 0) continue;
    if (!out.empty()) out += "+";
    if (k > 1) out += std::to_string(k);
    out += species[i].name;
  }
  return out;
}

std::string ReactionNetwork::reaction_name(const Reaction& r) const {
  return complex_name(r.source) + " -> " + complex_name(r.product);
}

namespace {

std::string format_rate(double r) {
  // Shortest representation that round-trips through strtod.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, r);
    if (std::strtod(buf, nullptr) == r) return buf;
  }
  return std::to_string(r);
}

}  // namespace

std::string ReactionNetwork::to_dsl() const {
  std::string out;
  for (const Reaction& r : reactions) {
    out += complex_name(r.source) + " -> " + complex_name(r.product) + " @ " +
           format_rate(r.rate_constant) + "\n";
  }
  return out;
}

bool is_binary(const ReactionNetwork& network) {
  for (const Complex& c : network.complexes)
    if (c.order() > 2) return false;
  return true;
}

void finalize_network(ReactionNetwork& network) {
  const size_t d = network.species.size();
  std::set<std::pair<Complex, Complex>> seen;
  network.complexes.clear();
  for (const Reaction& r : network.reactions) {
    if (r.source.coefficients.size() != d || r.product.coefficients.size() != d)
      throw std::invalid_argument("reaction dimension mismatch");
    if (r.source == r.product)
      throw std::invalid_argument("reaction source equals product: " +
                                  network.reaction_name(r));
    if (!(r.rate_constant > 0.0))
      throw std::invalid_argument("non-positive rate constant for " +
                                  network.reaction_name(r));
    for (int c : r.source.coefficients)
      if (c < 0) throw std::invalid_argument("negative stoichiometric coefficient");
    for (int c : r.product.coefficients)
      if (c < 0) throw std::invalid_argument("negative stoichiometric coefficient");
    if (!seen.insert({r.source, r.product}).second)
      throw std::invalid_argument("duplicate reaction: " + network.reaction_name(r));
    if (network.complex_index(r.source) < 0) network.complexes.push_back(r.source);
    if (network.complex_index(r.product) < 0) network.complexes.push_back(r.product);
  }
}

}  // namespace crnmix
