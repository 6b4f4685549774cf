#include "qdp4/kgroups.hpp"

namespace qdp4 {

namespace {

FieldPtr rat() { return Field::rationals(); }

Scalar qint(long long v) { return Scalar::from_int(rat(), v); }

// Signed permutation matrix on n labels: e_i -> signs[perm[i]] e_{perm[i]}.
void place_signed_perm(Mat& m, std::size_t offset, const SignedAction& a) {
  for (std::size_t i = 0; i < a.perm.size(); ++i)
    m(offset + a.perm[i], offset + i) = qint(a.signs[a.perm[i]]);
}

int fixed_rank(const Mat& m) { return static_cast<int>(m.rows() - rank(m - Mat::identity(rat(), m.rows()))); }

}  // namespace

std::vector<long long> K0ClassX::coords() const {
  std::vector<long long> v{r};
  v.insert(v.end(), c1.begin(), c1.end());
  v.push_back(s2);
  return v;
}

K0ClassX K0ClassX::from_coords(const std::vector<long long>& v) {
  if (v.size() != 8) throw Error(ErrorCode::InvalidClass, "K0(X) classes have 8 coordinates");
  K0ClassX c;
  c.r = v[0];
  for (int i = 0; i < 6; ++i) c.c1[i] = v[i + 1];
  c.s2 = v[7];
  return c;
}

K0ClassX K0ClassX::operator+(const K0ClassX& o) const { return {r + o.r, c1 + o.c1, s2 + o.s2}; }

K0ClassX K0ClassX::operator-() const { return {-r, -c1, -s2}; }

mpq_class euler_x(const K0ClassX& u, const K0ClassX& v) {
  const PicClass k = canonical_class();
  auto z = [](long long x) { return mpz_class(static_cast<long>(x)); };
  mpq_class chi(z(u.r * v.r));
  chi -= mpq_class(z(intersect(k, u.r * v.c1 - v.r * u.c1)), 2);
  chi += mpq_class(z(u.r * v.s2 + v.r * u.s2), 2);
  chi -= z(intersect(u.c1, v.c1));
  chi.canonicalize();
  return chi;
}

K0ClassX class_of(const PicClass& d) { return {1, d, intersect(d, d)}; }

Mat k0x_gram() {
  Mat e(rat(), 8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      std::vector<long long> a(8, 0), b(8, 0);
      a[i] = 1;
      b[j] = 1;
      e(i, j) = Scalar::from_rational(rat(), euler_x(K0ClassX::from_coords(a), K0ClassX::from_coords(b)));
    }
  return e;
}

Mat serre_from_gram(const Mat& e) { return inverse(e) * e.transpose(); }

Mat tensor_canonical_matrix() {
  const PicClass k = canonical_class();
  Mat s(rat(), 8, 8);
  for (int j = 0; j < 8; ++j) {
    std::vector<long long> a(8, 0);
    a[j] = 1;
    const K0ClassX x = K0ClassX::from_coords(a);
    const K0ClassX y{x.r, x.c1 + x.r * k, x.s2 + 2 * intersect(x.c1, k) + x.r * intersect(k, k)};
    const auto c = y.coords();
    for (int i = 0; i < 8; ++i) s(i, j) = qint(c[i]);
  }
  return s;
}

std::vector<K0ClassX> atom_sublattice() {
  // chi([O], v) = (2 r - K.D + s2) / 2; the s2 coefficient is 1
  const PicClass k = canonical_class();
  std::vector<K0ClassX> basis;
  for (int i = 0; i < 7; ++i) {
    std::vector<long long> v(8, 0);
    v[i] = 1;
    long long f;
    if (i == 0) {
      f = 2;
    } else {
      PicClass e{};
      e[i - 1] = 1;
      f = -intersect(k, e);
    }
    v[7] = -f;
    basis.push_back(K0ClassX::from_coords(v));
  }
  return basis;
}

std::vector<long long> atom_coords(const K0ClassX& v) {
  if (euler_x(class_of(PicClass{}), v) != 0)
    throw Error(ErrorCode::InvalidClass, "class is not orthogonal to [O]");
  auto c = v.coords();
  c.pop_back();
  return c;
}

Mat atom_gram() {
  const auto b = atom_sublattice();
  Mat e(rat(), 7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) e(i, j) = Scalar::from_rational(rat(), euler_x(b[i], b[j]));
  return e;
}

Mat atom_serre() { return serre_from_gram(atom_gram()); }

Mat wpl_gram(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "a weighted line needs at least one weighted point");
  const std::size_t d = 2 + static_cast<std::size_t>(n);
  Mat e(rat(), d, d);
  for (std::size_t j = 0; j < d; ++j) e(0, j) = qint(1);
  e(1, 0) = qint(-1);
  for (std::size_t i = 2; i < d; ++i) e(i, i) = qint(1);
  return e;
}

SignedAction action_of(const SignedPerm& a) {
  return {std::vector<int>(a.perm().begin(), a.perm().end()), std::vector<int>(a.signs().begin(), a.signs().end())};
}

SignedAction action_of(const CycleSignature& sig) {
  auto [perm, signs] = sig.representative();
  return {perm, signs};
}

Mat space_action_matrix(RankSpace space, const SignedAction& a) {
  const std::size_t n = a.perm.size();
  switch (space) {
    case RankSpace::Picard: {
      Mat m(rat(), n + 1, n + 1);
      m(0, 0) = qint(1);
      place_signed_perm(m, 1, a);
      return m;
    }
    case RankSpace::Wpl:
    case RankSpace::TorsionPart: {
      // [S_i] -> [S_j] or [O_pt] - [S_j]
      const std::size_t off = space == RankSpace::Wpl ? 1 : 0;
      Mat m(rat(), n + off + 1, n + off + 1);
      if (off) m(0, 0) = qint(1);
      m(off, off) = qint(1);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = a.perm[i];
        if (a.signs[j] > 0) {
          m(off + 1 + j, off + 1 + i) = qint(1);
        } else {
          m(off + 1 + j, off + 1 + i) = qint(-1);
          m(off, off + 1 + i) = qint(1);
        }
      }
      return m;
    }
    case RankSpace::SurfaceK0: {
      Mat m(rat(), n + 3, n + 3);
      m(0, 0) = qint(1);
      m(n + 2, n + 2) = qint(1);
      if (n == 5) {
        Perm5 p{};
        std::array<int, 5> s{};
        for (int i = 0; i < 5; ++i) {
          p[i] = a.perm[i];
          s[i] = a.signs[i];
        }
        const Mat w = pic_action_matrix(SignedPerm(p, s));
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) m(1 + i, 1 + j) = w(i, j);
      } else {
        m(1, 1) = qint(1);
        place_signed_perm(m, 2, a);
      }
      return m;
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown rank space");
}

int kernel_invariant_rank(RankSpace space, const SignedAction& a) {
  return fixed_rank(space_action_matrix(space, a));
}

int g_invariant_rank(RankSpace space, const CycleSignature& sig) {
  const int plus = sig.plus_count();
  switch (space) {
    case RankSpace::Picard: return 1 + plus;
    case RankSpace::Wpl: return 2 + plus;
    case RankSpace::SurfaceK0: return 3 + plus;
    case RankSpace::TorsionPart: return 1 + plus;
  }
  throw Error(ErrorCode::InvalidInput, "unknown rank space");
}

ConicBundleRanks conic_bundle_ranks(int n, const CycleSignature& sig, bool relatively_minimal) {
  if (n < 1 || sig.total() != n)
    throw Error(ErrorCode::InvalidInput, "signature cycles must sum to the number of degenerate fibres");
  if (relatively_minimal && sig.plus_count() > 0)
    throw Error(ErrorCode::InvalidInput, "relatively minimal conic bundle cannot have a +1 cycle");
  const int atom = kernel_invariant_rank(RankSpace::Wpl, action_of(sig));
  return {atom + 2, atom};
}

const char* to_string(RankSpace space) {
  switch (space) {
    case RankSpace::Picard: return "picard";
    case RankSpace::Wpl: return "wpl";
    case RankSpace::SurfaceK0: return "surface-K0";
    case RankSpace::TorsionPart: return "torsion-part";
  }
  return "?";
}

}  // namespace qdp4
