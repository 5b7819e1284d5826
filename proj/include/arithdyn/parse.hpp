#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arithdyn/line.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Polynomial grammar (whitespace-insensitive):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' integer]
//   atom   := integer | 'z' | 'w' | '(' expr ')'
// 'w' is zeta_N and needs conductor N > 1. Division is by nonzero constants
// only, so "-3/2*z^2" and "(1+w)*z^2" both work.
Polynomial parse_polynomial(std::string_view text, std::uint64_t conductor = 1);
/// Same grammar without 'z'.
CycloNumber parse_constant(std::string_view text, std::uint64_t conductor = 1);

/// "(p1,...,pm) + t*(v1,...,vm)". dimension = 0 accepts any m.
Line parse_line(std::string_view text, std::size_t dimension = 0, std::uint64_t conductor = 1);
std::string to_string(const Line& line);

/// Maps separated by ';'.
std::vector<Polynomial> parse_map_list(std::string_view text, std::uint64_t conductor = 1);

}  // namespace arithdyn
