#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace chaindesign {

using BigInt = mpz_class;

inline BigInt to_big(std::int64_t x) {
  BigInt out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(x));
  return out;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  BigInt out;
  if (k < 0 || k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

inline BigInt power(const BigInt& base, std::uint64_t exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
  return out;
}

inline bool divides(const BigInt& d, const BigInt& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact decimal, never scientific.
inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

}  // namespace chaindesign
