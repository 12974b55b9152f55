#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace turan {

using Rat = mpq_class;

// Accepts "p/q", plain integers, and decimal literals like "0.25" or "-1.5e-2"
// is not supported (no exponents). The result is canonicalized.
Rat parse_rational(std::string_view text);

// "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rat& q);

// Best rational approximation of x with denominator <= max_den (>= 1),
// via continued fractions with a final semiconvergent step.
Rat rational_from_double(double x, std::uint64_t max_den);

Rat rat_pow(const Rat& base, unsigned long e);

// value = p/q exactly when exact; `approx` is always usable.
struct DensityValue {
  bool exact = false;
  Rat rational;            // meaningful only when exact
  double approx = 0.0;
  double error_bound = 0.0;  // 0 when exact

  std::string to_string() const;
};

DensityValue exact_value(Rat q);
DensityValue approx_value(double v, double err);

// 12 significant digits.
std::string format_double(double v);

}  // namespace turan
