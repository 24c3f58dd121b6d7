#pragma once

// Basis indices are 1-based throughout. Public entry points take 64-bit
// indices; the operator engine works on arbitrary-precision indices so that
// lacunary selectors such as k_n = 2^n stay exact for large n.

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace qdf {

using Index = std::int64_t;
using BigIndex = mpz_class;
using Complex = std::complex<double>;

BigIndex to_big(Index i);

/// Checked narrowing; throws IndexOverflow when `i` does not fit.
Index to_index(const BigIndex& i);
bool fits_index(const BigIndex& i);

/// Natural logarithm of a positive big integer, accurate for any size.
double big_log(const BigIndex& n);

/// Nearest double, or +inf when out of range.
double big_to_double(const BigIndex& n);

std::string to_string(const BigIndex& i);

}  // namespace qdf
