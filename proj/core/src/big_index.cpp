#include "qdf/big_index.hpp"

#include <cmath>
#include <limits>

#include "qdf/error.hpp"

namespace qdf {

BigIndex to_big(Index i) {
  BigIndex out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(i));
  return out;
}

bool fits_index(const BigIndex& i) { return mpz_fits_slong_p(i.get_mpz_t()) != 0; }

Index to_index(const BigIndex& i) {
  if (!fits_index(i)) {
    fail(ErrorCode::IndexOverflow, "index " + to_string(i) + " exceeds the 64-bit range");
  }
  return static_cast<Index>(mpz_get_si(i.get_mpz_t()));
}

double big_log(const BigIndex& n) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double big_to_double(const BigIndex& n) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  if (exp > std::numeric_limits<double>::max_exponent) {
    return mant < 0 ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }
  return std::ldexp(mant, static_cast<int>(exp));
}

std::string to_string(const BigIndex& i) { return i.get_str(); }

}  // namespace qdf
