#include "fp_poly.hpp"

#include <utility>

namespace qdp4::fp {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // p is prime and a != 0
  return powmod(a, p - 2, p);
}

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Vec& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Vec add(const Vec& a, const Vec& b, std::uint64_t p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = addmod(r[i], b[i], p);
  trim(r);
  return r;
}

Vec sub(const Vec& a, const Vec& b, std::uint64_t p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = submod(r[i], b[i], p);
  trim(r);
  return r;
}

Vec mul(const Vec& a, const Vec& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

void divmod(const Vec& a, const Vec& m, std::uint64_t p, Vec& q, Vec& r) {
  const int dm = deg(m);
  r = a;
  trim(r);
  q.clear();
  if (deg(r) < dm) return;
  const std::uint64_t lead_inv = invmod(m[dm], p);
  q.assign(r.size() - dm, 0);
  for (int i = deg(r); i >= dm; i = deg(r)) {
    const std::uint64_t c = mulmod(r[i], lead_inv, p);
    q[i - dm] = c;
    for (int j = 0; j <= dm; ++j)
      r[i - dm + j] = submod(r[i - dm + j], mulmod(c, m[j], p), p);
    trim(r);
    if (r.empty()) break;
  }
  trim(q);
}

Vec rem(const Vec& a, const Vec& m, std::uint64_t p) {
  Vec q, r;
  divmod(a, m, p, q, r);
  return r;
}

Vec gcd(Vec a, Vec b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t li = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, li, p);
  }
  return a;
}

Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p) {
  return rem(mul(a, b, p), m, p);
}

Vec powmod_poly(const Vec& base, const mpz_class& e, const Vec& m, std::uint64_t p) {
  Vec result{1};
  result = rem(result, m, p);
  Vec b = rem(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod_poly(result, result, m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod_poly(result, b, m, p);
  }
  return result;
}

Vec invmod_poly(const Vec& a, const Vec& m, std::uint64_t p) {
  // extended Euclid tracking the coefficient of a
  Vec r0 = m, r1 = rem(a, m, p);
  Vec s0{}, s1{1};
  while (!r1.empty()) {
    Vec q, r;
    divmod(r0, r1, p, q, r);
    Vec s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (deg(r0) != 0) return {};
  const std::uint64_t li = invmod(r0[0], p);
  for (auto& c : s0) c = mulmod(c, li, p);
  return rem(s0, m, p);
}

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// t^(p^j) mod f
Vec frobenius_power_of_t(const Vec& f, std::uint64_t p, unsigned j) {
  Vec x{0, 1};
  x = rem(x, f, p);
  const mpz_class pe(static_cast<unsigned long>(p));
  for (unsigned i = 0; i < j; ++i) x = powmod_poly(x, pe, f, p);
  return x;
}

}  // namespace

bool is_irreducible(const Vec& f, std::uint64_t p) {
  const int n = deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  const Vec t{0, 1};
  if (sub(frobenius_power_of_t(f, p, static_cast<unsigned>(n)), t, p).size() != 0) return false;
  for (unsigned r : prime_divisors(static_cast<unsigned>(n))) {
    Vec h = sub(frobenius_power_of_t(f, p, static_cast<unsigned>(n) / r), t, p);
    if (deg(gcd(h, f, p)) != 0) return false;
  }
  return true;
}

}  // namespace qdp4::fp
