#pragma once

// Arbitrary-precision nonnegative integers, backed by GMP.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cyclo {

using BigNat = mpz_class;

inline BigNat from_u64(std::uint64_t v) {
    BigNat r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

// Caller guarantees the value fits.
inline std::uint64_t to_u64(const BigNat& v) {
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, 1, sizeof(r), 0, 0, v.get_mpz_t());
    return r;
}

inline bool fits_u64(const BigNat& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

// 2^e
inline BigNat pow2(std::uint64_t e) {
    BigNat r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

// Number of significant bits; 0 for zero.
inline std::size_t bit_length(const BigNat& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Exact decimal digit count (mpz_sizeinbase may overshoot by one).
inline std::size_t decimal_digits(const BigNat& v) {
    if (sgn(v) == 0) return 1;
    std::size_t d = mpz_sizeinbase(v.get_mpz_t(), 10);
    BigNat p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
    return cmp(abs(v), p) < 0 ? d - 1 : d;
}

// log2(v) for v > 0, accurate to double precision at any size.
double log2_of(const BigNat& v);

inline std::string to_decimal(const BigNat& v) { return v.get_str(10); }

BigNat parse_decimal(const std::string& s);

}  // namespace cyclo
