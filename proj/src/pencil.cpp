#include "qdp4/pencil.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace qdp4 {

namespace {

std::vector<Scalar> mul_binary(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size() + b.size() - 1, Scalar::zero(a[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

int perm_sign(const std::array<int, 5>& p) {
  int inv = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

// Member of the pencil at z (B at infinity).
Mat member(const Mat& a, const Mat& b, const ProjPoint& z) {
  if (z.is_infinity()) return b;
  return a - b * z.value();
}

}  // namespace

QuadricPencil::QuadricPencil(Mat a, Mat b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != 5 || a_.cols() != 5 || b_.rows() != 5 || b_.cols() != 5)
    throw Error(ErrorCode::InvalidInput, "pencil matrices must be 5x5");
  if (!same_field(a_.field(), b_.field()))
    throw Error(ErrorCode::DescriptorMismatch, "pencil matrices over different fields");
  if (!a_.is_symmetric() || !b_.is_symmetric())
    throw Error(ErrorCode::InvalidInput, "pencil matrices must be symmetric");
  Mat flat(a_.field(), 2, 25);
  for (int i = 0; i < 25; ++i) {
    flat(0, i) = a_(i / 5, i % 5);
    flat(1, i) = b_(i / 5, i % 5);
  }
  if (rank(flat) < 2) throw Error(ErrorCode::DegeneratePencil, "A and B are proportional");
}

QuadricPencil QuadricPencil::congruence(const Mat& m) const {
  if (m.rows() != 5 || m.cols() != 5) throw Error(ErrorCode::InvalidInput, "congruence matrix must be 5x5");
  if (det(m).is_zero()) throw Error(ErrorCode::InvalidInput, "congruence matrix is singular");
  return QuadricPencil(m.transpose() * a_ * m, m.transpose() * b_ * m);
}

QuadricPencil QuadricPencil::basis_change(const Scalar& alpha, const Scalar& beta, const Scalar& gamma,
                                          const Scalar& delta) const {
  if ((alpha * delta - beta * gamma).is_zero())
    throw Error(ErrorCode::InvalidInput, "pencil basis change is singular");
  return QuadricPencil(a_ * alpha + b_ * beta, a_ * gamma + b_ * delta);
}

Poly BinaryQuintic::affine() const { return Poly(coeffs[0].field(), coeffs); }

BinaryQuintic discriminant_quintic(const QuadricPencil& p) {
  const FieldPtr& f = p.field();
  std::vector<Scalar> total(6, Scalar::zero(f));
  std::array<int, 5> s{0, 1, 2, 3, 4};
  do {
    std::vector<Scalar> prod{Scalar::one(f)};
    for (int i = 0; i < 5; ++i) {
      prod = mul_binary(prod, {p.A()(i, s[i]), -p.B()(i, s[i])});
      if (std::all_of(prod.begin(), prod.end(), [](const Scalar& c) { return c.is_zero(); })) break;
    }
    if (prod.size() != 6) continue;
    const int sg = perm_sign(s);
    for (int i = 0; i < 6; ++i) total[i] += sg > 0 ? prod[i] : -prod[i];
  } while (std::next_permutation(s.begin(), s.end()));
  return {total};
}

bool is_smooth(const QuadricPencil& p) {
  Poly f = discriminant_quintic(p).affine();
  if (f.is_zero() || f.degree() < 4) return false;
  return squarefree(f);
}

Scalar DegeneratePoint::discriminant() const {
  Scalar d = Scalar::one(diagonal_entries.at(0).field());
  for (const auto& x : diagonal_entries) d *= x;
  return d;
}

PointConfiguration PencilSplitting::configuration() const {
  std::vector<ProjPoint> pts;
  for (const auto& d : points) pts.push_back(d.point);
  return PointConfiguration(pts);
}

namespace {

struct Orbits {
  std::vector<DegenerateOrbit> orbits;
  unsigned lcm = 1;
};

Orbits degenerate_orbits(const QuadricPencil& p) {
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth, "discriminant quintic is not squarefree");
  const FieldPtr& f = p.field();
  Poly q = discriminant_quintic(p).affine();
  Orbits out;
  if (q.degree() == 4) out.orbits.push_back({Poly::constant(Scalar::one(f)), true, 1});
  if (!f->is_finite()) {
    auto rs = rational_roots(q);
    if (static_cast<int>(rs.size()) != q.degree())
      throw Error(ErrorCode::UnsupportedSplitting,
                  "quintic does not split over Q; reduce the pencil mod p to analyze it");
    for (const auto& r : rs)
      out.orbits.push_back({Poly(f, {-r, Scalar::one(f)}), false, 1});
    return out;
  }
  for (const auto& fac : factor(q)) {
    const unsigned d = static_cast<unsigned>(fac.poly.degree());
    out.orbits.push_back({fac.poly, false, d});
    out.lcm = std::lcm(out.lcm, d);
  }
  return out;
}

PencilSplitting build_splitting(const QuadricPencil& p, const Orbits& o, const FieldPtr& working) {
  const FieldPtr& base = p.field();
  PencilSplitting s;
  s.base = base;
  s.working = working;
  s.splitting_degree = o.lcm;
  s.orbits = o.orbits;
  Mat a = p.A(), b = p.B();
  Embedding emb;
  if (!same_field(base, working)) {
    if (!base->is_finite() || !working->is_finite() || base->characteristic() != working->characteristic() ||
        working->degree() % (base->degree() * o.lcm) != 0)
      throw Error(ErrorCode::DescriptorMismatch, "working field does not contain a splitting field");
    emb = Embedding::between(base, working);
    a = map_entries(a, emb);
    b = map_entries(b, emb);
  }
  for (std::size_t k = 0; k < o.orbits.size(); ++k) {
    const auto& orb = o.orbits[k];
    std::vector<ProjPoint> pts;
    if (orb.at_infinity) {
      pts.push_back(ProjPoint::infinity(working));
    } else {
      Poly g = same_field(base, working) ? orb.factor : map_coeffs(orb.factor, emb);
      auto rs = roots(g);
      if (static_cast<int>(rs.size()) != g.degree())
        throw Error(ErrorCode::Internal, "factor does not split in the working field");
      for (const auto& r : rs) pts.push_back(ProjPoint::affine(r));
    }
    for (const auto& z : pts) {
      DegeneratePoint d;
      d.point = z;
      d.residue_degree = orb.degree;
      d.orbit = static_cast<int>(k);
      auto cd = diagonalize_congruence(member(a, b, z));
      for (const auto& x : cd.diagonal)
        if (!x.is_zero()) d.diagonal_entries.push_back(x);
      if (d.diagonal_entries.size() != 4) throw Error(ErrorCode::Internal, "degenerate member is not of corank 1");
      s.points.push_back(std::move(d));
    }
  }
  std::sort(s.points.begin(), s.points.end(),
            [](const DegeneratePoint& x, const DegeneratePoint& y) { return x.point < y.point; });
  return s;
}

FieldPtr working_field(const FieldPtr& base, unsigned lcm) {
  return lcm == 1 ? base : Field::canonical(base->characteristic(), base->degree() * lcm);
}

}  // namespace

PencilSplitting split(const QuadricPencil& p) {
  Orbits o = degenerate_orbits(p);
  return build_splitting(p, o, working_field(p.field(), o.lcm));
}

PencilSplitting split_in(const QuadricPencil& p, const FieldPtr& working) {
  return build_splitting(p, degenerate_orbits(p), working);
}

Diagonalization simultaneous_diagonalize(const QuadricPencil& p) {
  PencilSplitting s = split(p);
  const FieldPtr& w = s.working;
  Mat a = p.A(), b = p.B();
  if (!same_field(p.field(), w)) {
    Embedding e = Embedding::between(p.field(), w);
    a = map_entries(a, e);
    b = map_entries(b, e);
  }
  Diagonalization out{Mat(w, 5, 5), {}};
  for (int j = 0; j < 5; ++j) {
    auto ker = kernel(member(a, b, s.points[j].point));
    if (ker.size() != 1) throw Error(ErrorCode::Internal, "degenerate member is not of corank 1");
    for (int i = 0; i < 5; ++i) out.m(i, j) = ker[0][i];
  }
  Mat da = out.m.transpose() * a * out.m, db = out.m.transpose() * b * out.m;
  for (int j = 0; j < 5; ++j) out.pairs.emplace_back(da(j, j), db(j, j));
  return out;
}

std::strong_ordering NormalForm::operator<=>(const NormalForm& o) const {
  if (auto c = lambda <=> o.lambda; c != 0) return c;
  return mu <=> o.mu;
}

NormalForm normal_form(const PencilSplitting& s, const Perm5& ordering) {
  std::array<bool, 5> seen{};
  for (int i : ordering) {
    if (i < 0 || i > 4 || seen[i]) throw Error(ErrorCode::InvalidInput, "ordering is not a permutation of 0..4");
    seen[i] = true;
  }
  const auto& pt = s.points;
  Moebius m = Moebius::to_standard(pt[ordering[0]].point, pt[ordering[1]].point, pt[ordering[2]].point);
  return {m(pt[ordering[3]].point).value(), m(pt[ordering[4]].point).value()};
}

NormalForm normal_form(const QuadricPencil& p, const Perm5& ordering) { return normal_form(split(p), ordering); }

std::vector<NormalForm> canonical_invariant(const PencilSplitting& s) {
  std::set<NormalForm> out;
  Perm5 o{0, 1, 2, 3, 4};
  do {
    out.insert(normal_form(s, o));
  } while (std::next_permutation(o.begin(), o.end()));
  return {out.begin(), out.end()};
}

std::vector<NormalForm> canonical_invariant(const QuadricPencil& p) { return canonical_invariant(split(p)); }

std::optional<IsoCertificate> isomorphic(const QuadricPencil& p1, const QuadricPencil& p2) {
  if (!same_field(p1.field(), p2.field()))
    throw Error(ErrorCode::DescriptorMismatch, "pencils are over different fields: " + p1.field()->describe() +
                                                   " vs " + p2.field()->describe());
  const FieldPtr& base = p1.field();
  Orbits o1 = degenerate_orbits(p1), o2 = degenerate_orbits(p2);
  if (base->is_finite() && o1.lcm != o2.lcm) {
    // equal invariant sets would lie in both splitting fields
    mpz_class qg;
    mpz_pow_ui(qg.get_mpz_t(), base->order().get_mpz_t(), std::gcd(o1.lcm, o2.lcm));
    for (const auto& s : {build_splitting(p1, o1, working_field(base, o1.lcm)),
                          build_splitting(p2, o2, working_field(base, o2.lcm))})
      for (const auto& nf : canonical_invariant(s))
        if (!in_subfield(nf.lambda, qg) || !in_subfield(nf.mu, qg)) return std::nullopt;
  }
  const unsigned l = std::lcm(o1.lcm, o2.lcm);
  FieldPtr working = working_field(base, l);
  o1.lcm = o2.lcm = l;
  PencilSplitting s1 = build_splitting(p1, o1, working), s2 = build_splitting(p2, o2, working);
  auto m = pgl2_match(s1.configuration(), s2.configuration());
  const bool same_invariant = canonical_invariant(s1) == canonical_invariant(s2);
  if (m.has_value() != same_invariant) throw Error(ErrorCode::Internal, "invariant and Moebius match disagree");
  if (!m) return std::nullopt;
  const bool rational = !base->is_finite() || m->defined_over(base->order());
  return IsoCertificate{*m, rational};
}

CycleSignature galois_signature(const PencilSplitting& s) {
  if (!s.base->is_finite()) throw Error(ErrorCode::UnsupportedField, "Galois signature needs a finite base field");
  const mpz_class q = s.base->order();
  std::vector<std::pair<int, int>> cycles;
  for (std::size_t k = 0; k < s.orbits.size(); ++k) {
    // points are sorted, so the first hit is the smallest root of the orbit
    const auto it = std::find_if(s.points.begin(), s.points.end(),
                                 [&](const DegeneratePoint& d) { return d.orbit == static_cast<int>(k); });
    const unsigned m = s.orbits[k].degree;
    mpz_class qm;
    mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), m);
    const Scalar d = it->discriminant();
    const bool square = d.pow(mpz_class((qm - 1) / 2)).is_one();
    cycles.emplace_back(static_cast<int>(m), square ? 1 : -1);
  }
  return CycleSignature(cycles);
}

CycleSignature galois_signature(const QuadricPencil& p) {
  if (!p.field()->is_finite()) throw Error(ErrorCode::UnsupportedField, "Galois signature needs a finite base field");
  return galois_signature(split(p));
}

std::uint64_t pointcount_guard() {
  if (const char* env = std::getenv("QDP4_POINTCOUNT_GUARD")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 250;
}

namespace {

// F_{p^n} with elements indexed by their coefficient vectors read in base p.
class TableField {
 public:
  explicit TableField(FieldPtr f) : f_(std::move(f)) {
    p_ = f_->characteristic();
    n_ = static_cast<std::uint32_t>(f_->order().get_ui());
    elems_.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::vector<std::uint64_t> c(f_->degree());
      std::uint32_t x = i;
      for (auto& d : c) {
        d = x % p_;
        x /= static_cast<std::uint32_t>(p_);
      }
      elems_.push_back(Scalar::from_coeffs(f_, c));
    }
    add_.resize(std::size_t(n_) * n_);
    mul_.resize(std::size_t(n_) * n_);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = i; j < n_; ++j) {
        std::uint32_t s = 0, pw = 1, a = i, b = j;
        for (unsigned d = 0; d < f_->degree(); ++d) {
          s += static_cast<std::uint32_t>(((a % p_) + (b % p_)) % p_) * pw;
          a /= static_cast<std::uint32_t>(p_);
          b /= static_cast<std::uint32_t>(p_);
          pw *= static_cast<std::uint32_t>(p_);
        }
        add_[std::size_t(i) * n_ + j] = add_[std::size_t(j) * n_ + i] = s;
        const std::uint32_t m = index(elems_[i] * elems_[j]);
        mul_[std::size_t(i) * n_ + j] = mul_[std::size_t(j) * n_ + i] = m;
      }
    sqrt_.resize(n_);
    for (std::uint32_t r = 0; r < n_; ++r) sqrt_[mul(r, r)].push_back(r);
  }

  std::uint32_t size() const { return n_; }
  std::uint32_t index(const Scalar& s) const {
    std::uint32_t x = 0, pw = 1;
    for (auto c : s.coeffs()) {
      x += static_cast<std::uint32_t>(c) * pw;
      pw *= static_cast<std::uint32_t>(p_);
    }
    return x;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[std::size_t(a) * n_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[std::size_t(a) * n_ + b]; }
  const std::vector<std::uint32_t>& sqrt(std::uint32_t a) const { return sqrt_[a]; }

 private:
  FieldPtr f_;
  std::uint64_t p_;
  std::uint32_t n_;
  std::vector<Scalar> elems_;
  std::vector<std::uint32_t> add_, mul_;
  std::vector<std::vector<std::uint32_t>> sqrt_;
};

// Points of {sum a_i x_i^2 = 0} cap {x^T B x = 0} with a_4 != 0.
class PointCounter {
 public:
  PointCounter(const TableField& t, std::array<std::uint32_t, 5> a, std::array<std::array<std::uint32_t, 5>, 5> b,
               std::uint32_t neg_inv_a4)
      : t_(t), a_(a), b_(b), neg_inv_a4_(neg_inv_a4) {}

  std::uint64_t run() {
    std::uint64_t total = 0;
    // (0:0:0:0:1) is never on the first quadric since a_4 != 0
    for (int lead = 0; lead < 4; ++lead) {
      State s{};
      assign(s, lead, 1);
      total += lead == 3 ? finish(s) : descend(s, lead + 1);
    }
    return total;
  }

 private:
  struct State {
    std::uint32_t ca = 0, cb = 0;
    std::array<std::uint32_t, 5> lin{};  // sum over assigned i of b_ij y_i
  };

  void assign(State& s, int i, std::uint32_t v) const {
    const std::uint32_t sq = t_.mul(v, v);
    s.ca = t_.add(s.ca, t_.mul(a_[i], sq));
    const std::uint32_t cross = t_.mul(s.lin[i], v);
    s.cb = t_.add(s.cb, t_.add(t_.add(cross, cross), t_.mul(b_[i][i], sq)));
    for (int j = i + 1; j < 5; ++j) s.lin[j] = t_.add(s.lin[j], t_.mul(b_[i][j], v));
  }

  std::uint64_t descend(const State& s, int i) const {
    std::uint64_t n = 0;
    for (std::uint32_t v = 0; v < t_.size(); ++v) {
      State c = s;
      assign(c, i, v);
      n += i == 3 ? finish(c) : descend(c, i + 1);
    }
    return n;
  }

  // Solutions y_4 of a_4 y^2 + ca = 0 and b_44 y^2 + 2 lin_4 y + cb = 0.
  std::uint64_t finish(const State& s) const {
    std::uint64_t n = 0;
    const std::uint32_t lb2 = t_.add(s.lin[4], s.lin[4]);
    for (std::uint32_t r : t_.sqrt(t_.mul(neg_inv_a4_, s.ca))) {
      const std::uint32_t v = t_.add(t_.add(t_.mul(b_[4][4], t_.mul(r, r)), t_.mul(lb2, r)), s.cb);
      n += v == 0;
    }
    return n;
  }

  const TableField& t_;
  std::array<std::uint32_t, 5> a_;
  std::array<std::array<std::uint32_t, 5>, 5> b_;
  std::uint32_t neg_inv_a4_;
};

}  // namespace

constexpr std::uint64_t kTableLimit = 4096;

mpz_class count_points(const QuadricPencil& p, unsigned k, std::uint64_t guard) {
  const FieldPtr& base = p.field();
  if (!base->is_finite()) throw Error(ErrorCode::UnsupportedField, "point counting needs a finite base field");
  if (k < 1) throw Error(ErrorCode::InvalidInput, "extension degree must be at least 1");
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth, "discriminant quintic is not squarefree");
  mpz_class qk;
  mpz_pow_ui(qk.get_mpz_t(), base->order().get_mpz_t(), k);
  if (qk > mpz_class(static_cast<unsigned long>(std::min<std::uint64_t>(guard, kTableLimit))))
    throw Error(ErrorCode::ResourceLimit, "q^k = " + qk.get_str() + " exceeds the point-count guard of " +
                                              std::to_string(guard) + " (set QDP4_POINTCOUNT_GUARD to raise it)");

  auto cd = diagonalize_congruence(p.A());
  Mat b = cd.transform.transpose() * p.B() * cd.transform;
  std::vector<Scalar> a = cd.diagonal;
  // move a nonzero diagonal entry of A to the last coordinate
  int last = 4;
  while (a[last].is_zero()) --last;
  std::array<int, 5> order{0, 1, 2, 3, 4};
  std::swap(order[last], order[4]);

  const FieldPtr big = k == 1 ? base : Field::canonical(base->characteristic(), base->degree() * k);
  const Embedding emb = Embedding::between(base, big);
  TableField t(big);
  std::array<std::uint32_t, 5> ai{};
  std::array<std::array<std::uint32_t, 5>, 5> bi{};
  for (int i = 0; i < 5; ++i) {
    ai[i] = t.index(emb(a[order[i]]));
    for (int j = 0; j < 5; ++j) bi[i][j] = t.index(emb(b(order[i], order[j])));
  }
  const std::uint32_t neg_inv = t.index(emb(-a[order[4]].inv()));
  return mpz_class(static_cast<unsigned long>(PointCounter(t, ai, bi, neg_inv).run()));
}

mpz_class predicted_count(const CycleSignature& sig, const mpz_class& q, unsigned k) {
  mpz_class qk;
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
  return qk * qk + qk * (1 + mpz_class(static_cast<long>(sig.trace_power(static_cast<int>(k))))) + 1;
}

QuadricPencil reconstruct(const NormalForm& nf) {
  const Scalar& l = nf.lambda;
  const Scalar& m = nf.mu;
  if (!l.valid() || !m.valid() || !same_field(l.field(), m.field()))
    throw Error(ErrorCode::InvalidNormalForm, "normal form entries must lie in one field");
  if (l.is_zero() || l.is_one() || m.is_zero() || m.is_one() || l == m)
    throw Error(ErrorCode::InvalidNormalForm,
                "normal form needs lambda, mu outside {0, 1} and lambda != mu, got (" + l.to_string() + ", " +
                    m.to_string() + ")");
  const FieldPtr& f = l.field();
  const Scalar z = Scalar::zero(f), o = Scalar::one(f);
  return QuadricPencil(Mat::diagonal(f, {o, z, o, l, m}), Mat::diagonal(f, {z, o, o, o, o}));
}

}  // namespace qdp4
