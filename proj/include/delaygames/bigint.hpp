#pragma once

#include <gmpxx.h>

#include <string>

namespace delaygames {

/// Arbitrary-precision non-negative integer. Lookahead bounds grow like
/// 2^(n^2 c + 1) and leave the machine-word range already for tiny automata.
using BigUint = mpz_class;

inline BigUint big_pow2(unsigned long exponent) {
  BigUint r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
  return r;
}

inline std::string big_to_string(const BigUint& v) { return v.get_str(); }

}  // namespace delaygames
