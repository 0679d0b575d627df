#include "crnmix/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace crnmix {

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;

  int column() const {
    // Column within the current line; `pos` never crosses a newline here
    // because lines are split before parsing.
    return static_cast<int>(pos) + 1;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, column());
  }

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  void skip_space() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool consume(std::string_view token) {
    if (text.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }
};

// A complex during parsing: species name -> coefficient. The dimension is not
// yet known, so vectors are materialized after all species are seen.
using RawComplex = std::map<std::string, long long>;

struct RawReaction {
  RawComplex source, product;
  double rate = 1.0;
  int line = 1;
};

std::string parse_identifier(Cursor& cur) {
  if (!std::isalpha(static_cast<unsigned char>(cur.peek())))
    cur.fail("expected species identifier");
  size_t start = cur.pos;
  while (!cur.done() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                         cur.peek() == '_'))
    ++cur.pos;
  return std::string(cur.text.substr(start, cur.pos - start));
}

long long parse_coefficient(Cursor& cur) {
  size_t start = cur.pos;
  while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
    ++cur.pos;
  std::string digits(cur.text.substr(start, cur.pos - start));
  if (cur.peek() == '.' || cur.peek() == 'e' || cur.peek() == 'E') {
    // Guard against things like "1.5A"; identifiers may start with e/E so only
    // flag the dot form plus an explicit exponent-looking tail after a dot.
    if (cur.peek() == '.') cur.fail("coefficient must be a non-negative integer");
  }
  long long value = std::strtoll(digits.c_str(), nullptr, 10);
  if (value == 0) cur.fail("zero coefficient in species term");
  if (value > 1'000'000) cur.fail("coefficient too large");
  return value;
}

RawComplex parse_complex(Cursor& cur) {
  cur.skip_space();
  RawComplex out;
  if (cur.peek() == '0' &&
      !std::isalnum(static_cast<unsigned char>(
          cur.pos + 1 < cur.text.size() ? cur.text[cur.pos + 1] : '\0'))) {
    ++cur.pos;
    return out;  // the zero complex
  }
  while (true) {
    cur.skip_space();
    long long coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(cur.peek())))
      coeff = parse_coefficient(cur);
    else if (cur.peek() == '-')
      cur.fail("coefficient must be a non-negative integer");
    std::string name = parse_identifier(cur);
    out[name] += coeff;
    cur.skip_space();
    if (cur.peek() == '+') {
      ++cur.pos;
      continue;
    }
    break;
  }
  return out;
}

double parse_rate(Cursor& cur) {
  cur.skip_space();
  // The line view is a slice of a larger buffer, so copy the tail for strtod.
  std::string tail(cur.text.substr(cur.pos));
  char* end = nullptr;
  double value = std::strtod(tail.c_str(), &end);
  if (end == tail.c_str()) cur.fail("expected rate constant");
  cur.pos += static_cast<size_t>(end - tail.c_str());
  if (!(value > 0.0) || !std::isfinite(value))
    cur.fail("rate constant must be positive and finite");
  return value;
}

}  // namespace

ReactionNetwork parse_network(std::string_view text) {
  std::vector<RawReaction> raws;
  std::vector<std::string> species_order;
  std::set<std::string> species_seen;
  std::set<std::pair<RawComplex, RawComplex>> reaction_seen;

  // First-appearance order must follow the text left to right, so walk the
  // complex terms in textual order rather than map order.
  auto note_species_ordered = [&](Cursor& cur, size_t from, size_t to) {
    size_t p = from;
    while (p < to) {
      char ch = cur.text[p];
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        size_t s = p;
        while (p < to && (std::isalnum(static_cast<unsigned char>(cur.text[p])) ||
                          cur.text[p] == '_'))
          ++p;
        std::string name(cur.text.substr(s, p - s));
        if (species_seen.insert(name).second) species_order.push_back(name);
      } else {
        ++p;
      }
    }
  };

  int line_no = 0;
  size_t offset = 0;
  while (offset <= text.size()) {
    size_t eol = text.find('\n', offset);
    std::string_view line = text.substr(
        offset, eol == std::string_view::npos ? std::string_view::npos
                                              : eol - offset);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;

    Cursor cur{line, 0, line_no};
    cur.skip_space();
    if (!cur.done() && cur.peek() != '#') {
      size_t line_start = cur.pos;
      RawComplex lhs = parse_complex(cur);
      cur.skip_space();
      bool reversible = false;
      if (cur.consume("<->"))
        reversible = true;
      else if (!cur.consume("->"))
        cur.fail("expected '->' or '<->'");
      RawComplex rhs = parse_complex(cur);
      size_t complexes_end = cur.pos;
      cur.skip_space();

      double fwd = 1.0, rev = 1.0;
      bool have_rates = false;
      if (cur.peek() == '@') {
        ++cur.pos;
        have_rates = true;
        fwd = parse_rate(cur);
        cur.skip_space();
        if (cur.peek() == ',') {
          ++cur.pos;
          if (!reversible) cur.fail("'->' takes at most one rate");
          rev = parse_rate(cur);
        } else if (reversible) {
          cur.fail("'<->' takes either no rates or two rates");
        }
        cur.skip_space();
      }
      (void)have_rates;
      if (!cur.done() && cur.peek() != '#')
        cur.fail("unexpected trailing text");

      if (lhs == rhs)
        throw ParseError("reaction source equals product", line_no, 1);
      if (!reaction_seen.insert({lhs, rhs}).second)
        throw ParseError("duplicate reaction", line_no, 1);
      if (reversible && !reaction_seen.insert({rhs, lhs}).second)
        throw ParseError("duplicate reaction (reverse direction)", line_no, 1);

      note_species_ordered(cur, line_start, complexes_end);

      raws.push_back(RawReaction{lhs, rhs, fwd, line_no});
      if (reversible) raws.push_back(RawReaction{rhs, lhs, rev, line_no});
    }

    if (eol == std::string_view::npos) break;
    offset = eol + 1;
  }

  ReactionNetwork net;
  for (int i = 0; i < static_cast<int>(species_order.size()); ++i)
    net.species.push_back(Species{species_order[i], i});

  auto materialize = [&](const RawComplex& raw) {
    Complex c;
    c.coefficients.assign(net.species.size(), 0);
    for (const auto& [name, coeff] : raw)
      c.coefficients[net.species_index(name)] = static_cast<int>(coeff);
    return c;
  };

  for (const RawReaction& raw : raws) {
    Reaction r;
    r.source = materialize(raw.source);
    r.product = materialize(raw.product);
    r.rate_constant = raw.rate;
    net.reactions.push_back(r);
  }

  try {
    finalize_network(net);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_no, 1);
  }
  return net;
}

}  // namespace crnmix
