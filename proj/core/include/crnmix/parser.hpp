#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "crnmix/network.hpp"

namespace crnmix {

/// Error raised for malformed network text. Carries the 1-based line and
/// column of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the reaction network DSL:
///
///   line     := reaction | comment("#"...) | blank
///   reaction := complex arrow complex [ "@" rate [ "," rate ] ]
///   arrow    := "->" | "<->"        ("<->" takes 0 or 2 rates, second is reverse)
///   complex  := "0" | term ("+" term)*
///   term     := [integer] identifier      (default coefficient 1)
///   identifier := [A-Za-z][A-Za-z0-9_]*
///
/// Species are indexed in first-appearance order. "<->" expands to a pair of
/// reactions. Omitted rates default to 1.0.
ReactionNetwork parse_network(std::string_view text);

}  // namespace crnmix
