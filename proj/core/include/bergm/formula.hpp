#ifndef BERGM_FORMULA_HPP_
#define BERGM_FORMULA_HPP_

#include <string>
#include <string_view>

#include "bergm/model.hpp"

namespace bergm {

/**
 * Parses a model formula: a `+`-separated list of term calls, e.g.
 *
 *   edges + b1cov("tenure") + b2nodematch("gender", beta = 0.1, diff = TRUE)
 *
 * Positional arguments come first (the attribute name, or the integer of
 * b2star/b2degree), then named ones: alpha, beta, diff, keep. Booleans are
 * TRUE/FALSE or true/false; keep takes a string or c("a", "b").
 *
 * Nodematch terms without an exponent are accepted so that the result can
 * serve as a profile template. Throws ParseError with a 1-based column.
 */
ModelSpec parse_formula(std::string_view text);

/// Canonical text; parse_formula(format_formula(s)) == s.
std::string format_formula(const ModelSpec& spec);

/// Shortest text that reads back as exactly `value`.
std::string format_number(double value);

}  // namespace bergm

#endif  // BERGM_FORMULA_HPP_
