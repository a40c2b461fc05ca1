#pragma once

#include <string>

#include "freecert/poly.hpp"

namespace freecert {

/// Parses a scalar noncommutative polynomial from a small expression
/// language:
///   terms     +, -, *, ^ (nonnegative integer powers), parentheses
///   variables x or x1, x2, ...; a trailing apostrophe marks the adjoint
///             letter (x2' is the starred variable)
///   numbers   decimal literals; a trailing i makes them imaginary ("2i",
///             bare "i" is the imaginary unit)
/// Juxtaposition multiplies ("2x1x2" = 2 * x1 * x2).  Multiplication is in
/// the free algebra: "x1x2" and "x2x1" are different monomials.
///
/// num_vars pins the variable count; 0 infers it from the highest index used
/// (at least 1).  Throws std::invalid_argument on syntax errors, with the
/// offending position in the message.
FreePoly parse_poly(const std::string& text, int num_vars = 0);

}  // namespace freecert
