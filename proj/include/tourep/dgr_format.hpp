#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tourep/digraph.hpp"

namespace tourep {

/// Malformed dgr text (bad header, bad arc line, loop, out-of-range id).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// The dgr text format:
//
//   # comment lines (and trailing "# ..." comments) are ignored
//   n m
//   tail head      (m lines, 0-indexed; repeated lines are parallel arcs)
//
// format_dgr writes exactly "n m\n" followed by one "tail head\n" per arc in
// arc-id order, so parse_dgr(format_dgr(g)) == g.

Digraph parse_dgr(std::string_view text);
std::string format_dgr(const Digraph& g);

}  // namespace tourep
