#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sce {

// Exact rational scalar. Probabilities and capacities are kept exact;
// only entropies and the closed-form bounds live in floating point.
using Rat = mpq_class;

// Canonicalized construction; the raw mpq_class(num, den) constructor does
// not reduce the fraction, which breaks exact comparisons.
inline Rat rat(long num, unsigned long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_u(unsigned long num, unsigned long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q", a plain integer, or a decimal literal like "0.25".
Rat rat_parse(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rat& r);

double rat_double(const Rat& r);

// floor(c * n) for a nonnegative rational capacity and integer block length.
std::uint64_t floor_scaled(const Rat& c, std::uint64_t n);

}  // namespace sce
