#pragma once

#include <utility>
#include <vector>

#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"

namespace bmslab::exactmath {

// Solves A x = b exactly. Rows are cleared of denominators and eliminated by
// fraction-free (Bareiss) pivoting over integers; a singular system throws.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

// Unique interpolating polynomial through distinct sample points.
UPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& points);

// Resultant of two univariate polynomials, via the Euclidean remainder
// sequence. Zero exactly when the polynomials share a root.
Rat resultant(const UPoly& a, const UPoly& b);

}  // namespace bmslab::exactmath
