#include "qdp4/poly.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace qdp4 {

Poly::Poly(FieldPtr f, std::vector<Scalar> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
  for (const auto& c : c_) require_same_field(field_, c.field());
  normalize();
}

Poly Poly::from_ints(FieldPtr f, const std::vector<long long>& coeffs) {
  std::vector<Scalar> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.push_back(Scalar::from_int(f, v));
  return Poly(std::move(f), std::move(c));
}

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::x(FieldPtr f) { return from_ints(std::move(f), {0, 1}); }

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : Scalar::zero(field_);
}

const Scalar& Poly::lead() const {
  if (c_.empty()) throw Error(ErrorCode::DegenerateInput, "leading coefficient of the zero polynomial");
  return c_.back();
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  const Scalar li = c_.back().inv();
  return *this * li;
}

Poly Poly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t i = 1; i < c_.size(); ++i)
    d.push_back(c_[i] * Scalar::from_int(field_, static_cast<long long>(i)));
  return Poly(field_, std::move(d));
}

Scalar Poly::eval(const Scalar& x) const {
  require_same_field(field_, x.field());
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_field(field_, o.field_);
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
  return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  require_same_field(field_, o.field_);
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  require_same_field(field_, o.field_);
  if (c_.empty() || o.c_.empty()) return Poly(field_);
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Scalar& s) const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c * s);
  return Poly(field_, std::move(r));
}

Poly Poly::operator%(const Poly& m) const {
  Poly q(field_), r(field_);
  divmod(*this, m, q, r);
  return r;
}

Poly Poly::operator/(const Poly& m) const {
  Poly q(field_), r(field_);
  divmod(*this, m, q, r);
  return q;
}

bool Poly::operator==(const Poly& o) const {
  return same_field(field_, o.field_) && c_ == o.c_;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    const bool unit = c_[i].is_one();
    if (!unit || i == 0) s += c_[i].to_string();
    if (i >= 1) s += (unit ? "" : "*") + var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  require_same_field(a.field(), b.field());
  if (b.is_zero()) throw Error(ErrorCode::Arithmetic, "polynomial division by zero");
  const FieldPtr& f = a.field();
  std::vector<Scalar> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) {
    q = Poly(f);
    r = a;
    return;
  }
  std::vector<Scalar> quot(a.degree() - db + 1, Scalar::zero(f));
  const Scalar li = b.lead().inv();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    const Scalar c = rem[i] * li;
    quot[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeffs()[j];
  }
  rem.resize(db);
  q = Poly(f, std::move(quot));
  r = Poly(f, std::move(rem));
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& m) {
  Poly result = Poly::constant(Scalar::one(m.field())) % m;
  const Poly b = base % m;
  if (e == 0) return result;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

bool squarefree(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::DegenerateInput, "squarefree test of the zero polynomial");
  return gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// Finite-field factorization: squarefree decomposition, distinct-degree
// splitting, then Cantor-Zassenhaus equal-degree splitting.

namespace {

Poly pth_root(const Poly& f) {
  const FieldPtr& F = f.field();
  const std::uint64_t p = F->characteristic();
  // a^(1/p) = a^(p^(k-1)) in F_{p^k}
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, F->degree() - 1);
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i].pow(e));
  return Poly(F, std::move(c));
}

void squarefree_decomposition(const Poly& f, unsigned mult, std::vector<Factor>& out) {
  const FieldPtr& F = f.field();
  const std::uint64_t p = F->characteristic();
  Poly c = gcd(f, f.derivative());
  Poly w = f.monic() / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree_decomposition(pth_root(c), mult * static_cast<unsigned>(p), out);
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, unsigned>> out;
  const FieldPtr& F = g.field();
  const mpz_class q = F->order();
  const Poly x = Poly::x(F);
  Poly h = x % g;
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(g.degree()); ++d) {
    h = powmod(h, q, g);
    Poly part = gcd(g, h - x);
    if (part.degree() > 0) {
      out.emplace_back(part, d);
      g = g / part;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<unsigned>(g.degree()));
  return out;
}

Poly random_poly(const FieldPtr& F, int degree_below, std::mt19937_64& rng) {
  std::vector<Scalar> c;
  for (int i = 0; i < degree_below; ++i) {
    std::vector<std::uint64_t> v(F->degree());
    for (auto& x : v) x = rng() % F->characteristic();
    c.push_back(Scalar::from_coeffs(F, std::move(v)));
  }
  return Poly(F, std::move(c));
}

void equal_degree(const Poly& g, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (static_cast<unsigned>(g.degree()) == d) {
    out.push_back(g.monic());
    return;
  }
  const FieldPtr& F = g.field();
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), F->order().get_mpz_t(), d);
  const mpz_class e = (qd - 1) / 2;
  const Poly one = Poly::constant(Scalar::one(F));
  for (;;) {
    Poly a = random_poly(F, g.degree(), rng);
    if (a.degree() < 1) continue;
    Poly h = gcd(g, a);
    if (h.degree() <= 0) h = gcd(g, powmod(a, e, g) - one);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

bool factor_less(const Factor& a, const Factor& b) {
  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
  const auto& ca = a.poly.coeffs();
  const auto& cb = b.poly.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  }
  return a.multiplicity < b.multiplicity;
}

}  // namespace

std::vector<Factor> factor(const Poly& f) {
  if (!f.field()->is_finite())
    throw Error(ErrorCode::UnsupportedField,
                "factorization over Q is not supported; reduce modulo a prime");
  if (f.is_zero()) throw Error(ErrorCode::DegenerateInput, "factorization of the zero polynomial");
  std::vector<Factor> sqf;
  if (f.degree() > 0) squarefree_decomposition(f, 1, sqf);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::vector<Factor> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

// ---------------------------------------------------------------------------
// Rational roots via Sturm isolation of real roots. A rational root a/b of a
// primitive integer polynomial with leading coefficient L satisfies b | L, so
// once an isolating interval is narrower than 1/(2|L|) it holds at most one
// candidate N/L to test exactly.

namespace {

using QPoly = std::vector<mpq_class>;  // low degree first, trimmed

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

mpq_class qeval(const QPoly& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

QPoly qrem(QPoly a, const QPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    const mpq_class c = a.back() / b.back();
    for (int j = 0; j <= db; ++j) a[da - db + j] -= c * b[j];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

class Sturm {
 public:
  explicit Sturm(const QPoly& g) {
    seq_.push_back(g);
    QPoly d;
    for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<long>(i));
    qtrim(d);
    if (d.empty()) return;
    seq_.push_back(d);
    for (;;) {
      QPoly r = qrem(seq_[seq_.size() - 2], seq_.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      seq_.push_back(std::move(r));
    }
  }

  int variations(const mpq_class& x) const {
    int count = 0, last = 0;
    for (const auto& s : seq_) {
      const int sg = sgn(qeval(s, x));
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  }

 private:
  std::vector<QPoly> seq_;
};

struct RootSearch {
  const QPoly& g;
  const Sturm& sturm;
  mpq_class step;  // 1/(2|L|)
  mpz_class lead;
  std::vector<mpq_class> found;

  bool is_root(const mpq_class& x) const { return qeval(g, x) == 0; }

  void test_interval(mpq_class lo, mpq_class hi) {
    // exactly one root in (lo, hi), endpoints not roots
    while (hi - lo >= step) {
      mpq_class mid = (lo + hi) / 2;
      if (is_root(mid)) {
        found.push_back(mid);
        return;
      }
      if (sturm.variations(lo) - sturm.variations(mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
    mpq_class lt = lo * lead;
    mpz_class n = lt.get_num() / lt.get_den();  // truncation toward zero
    for (mpz_class c = n - 1; c <= n + 2; ++c) {
      mpq_class cand(c, lead);
      cand.canonicalize();
      if (cand > lo && cand < hi && is_root(cand)) {
        found.push_back(cand);
        return;
      }
    }
  }

  void isolate(const mpq_class& lo, const mpq_class& hi) {
    const int n = sturm.variations(lo) - sturm.variations(hi);
    if (n == 0) return;
    if (n == 1) {
      test_interval(lo, hi);
      return;
    }
    mpq_class mid = (lo + hi) / 2;
    if (!is_root(mid)) {
      isolate(lo, mid);
      isolate(mid, hi);
      return;
    }
    found.push_back(mid);
    mpq_class delta = (hi - lo) / 4;
    for (;;) {
      const mpq_class a = mid - delta, b = mid + delta;
      if (!is_root(a) && !is_root(b) && sturm.variations(a) - sturm.variations(b) == 1) {
        isolate(lo, a);
        isolate(b, hi);
        return;
      }
      delta /= 2;
    }
  }
};

}  // namespace

std::vector<Scalar> rational_roots(const Poly& f) {
  if (f.field()->is_finite()) return roots(f);
  if (f.is_zero()) throw Error(ErrorCode::DegenerateInput, "roots of the zero polynomial");
  if (f.degree() == 0) return {};
  // radical, then primitive integer form
  Poly rad = (f / gcd(f, f.derivative())).monic();
  mpz_class den = 1;
  for (const auto& c : rad.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  QPoly g;
  mpz_class content = 0;
  for (const auto& c : rad.coeffs()) {
    mpq_class v = c.rational() * den;
    g.push_back(v);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_num_mpz_t());
  }
  for (auto& c : g) c /= content;
  const mpz_class lead = abs(g.back().get_num());

  mpq_class bound = 0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    mpq_class r = abs(g[i] / g.back());
    if (r > bound) bound = r;
  }
  bound += 1;

  Sturm sturm(g);
  RootSearch search{g, sturm, mpq_class(mpz_class(1), mpz_class(2 * lead)), lead, {}};
  search.step.canonicalize();
  search.isolate(-bound, bound);
  std::sort(search.found.begin(), search.found.end());
  std::vector<Scalar> out;
  for (const auto& r : search.found) out.push_back(Scalar::from_rational(f.field(), r));
  return out;
}

std::vector<Scalar> roots(const Poly& f) {
  if (!f.field()->is_finite()) return rational_roots(f);
  std::vector<Scalar> out;
  for (const auto& fac : factor(f)) {
    if (fac.poly.degree() == 1) out.push_back(-fac.poly.coeffs()[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly map_coeffs(const Poly& f, const Embedding& e) {
  std::vector<Scalar> c;
  for (const auto& x : f.coeffs()) c.push_back(e(x));
  return Poly(e.target(), std::move(c));
}

// ---------------------------------------------------------------------------

Embedding Embedding::between(FieldPtr from, FieldPtr to) {
  Embedding e;
  if (from->is_finite() != to->is_finite() || from->characteristic() != to->characteristic() ||
      to->degree() % from->degree() != 0)
    throw Error(ErrorCode::DescriptorMismatch,
                "no embedding of " + from->describe() + " into " + to->describe());
  e.from_ = from;
  e.to_ = to;
  if (!from->is_finite() || from->kind() == FieldKind::Prime) {
    e.powers_ = {Scalar::one(to)};
    return e;
  }
  if (same_field(from, to)) {
    Scalar t = Scalar::generator(to);
    Scalar acc = Scalar::one(to);
    for (unsigned i = 0; i < from->degree(); ++i) {
      e.powers_.push_back(acc);
      acc = acc * t;
    }
    return e;
  }
  std::vector<long long> m;
  for (auto c : from->modulus()) m.push_back(static_cast<long long>(c));
  auto rs = roots(Poly::from_ints(to, m));
  if (rs.empty()) throw Error(ErrorCode::DescriptorMismatch, "modulus has no root in target field");
  Scalar acc = Scalar::one(to);
  for (unsigned i = 0; i < from->degree(); ++i) {
    e.powers_.push_back(acc);
    acc = acc * rs.front();
  }
  return e;
}

Scalar Embedding::operator()(const Scalar& a) const {
  require_same_field(from_, a.field());
  if (!from_->is_finite()) return a;
  Scalar acc = Scalar::zero(to_);
  for (std::size_t i = 0; i < powers_.size(); ++i) {
    if (a.coeffs()[i] != 0)
      acc += powers_[i] * Scalar::from_int(to_, static_cast<long long>(a.coeffs()[i]));
  }
  return acc;
}

}  // namespace qdp4
