#pragma once

// Dense polynomials over F_p as coefficient vectors, low degree first.
// Internal to the library; used to implement extension-field arithmetic and
// modulus selection.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace qdp4::fp {

using Vec = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

void trim(Vec& a);
int deg(const Vec& a);  // -1 for zero
Vec add(const Vec& a, const Vec& b, std::uint64_t p);
Vec sub(const Vec& a, const Vec& b, std::uint64_t p);
Vec mul(const Vec& a, const Vec& b, std::uint64_t p);
// Remainder modulo a monic or general nonzero polynomial.
Vec rem(const Vec& a, const Vec& m, std::uint64_t p);
void divmod(const Vec& a, const Vec& m, std::uint64_t p, Vec& q, Vec& r);
Vec gcd(Vec a, Vec b, std::uint64_t p);  // monic
Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p);
Vec powmod_poly(const Vec& base, const mpz_class& e, const Vec& m, std::uint64_t p);
// Inverse of a modulo m (gcd must be 1); empty vector if not invertible.
Vec invmod_poly(const Vec& a, const Vec& m, std::uint64_t p);

// Rabin's test for a monic polynomial over F_p.
bool is_irreducible(const Vec& f, std::uint64_t p);

}  // namespace qdp4::fp
