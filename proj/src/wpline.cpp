#include "qdp4/wpline.hpp"

#include <algorithm>

namespace qdp4 {

ProjPoint::ProjPoint(Scalar x, Scalar y) {
  require_same_field(x.field(), y.field());
  if (x.is_zero() && y.is_zero()) throw Error(ErrorCode::InvalidInput, "(0:0) is not a projective point");
  if (y.is_zero()) {
    x_ = Scalar::one(x.field());
    y_ = std::move(y);
  } else {
    x_ = x / y;
    y_ = Scalar::one(y.field());
  }
}

ProjPoint ProjPoint::affine(const Scalar& z) { return ProjPoint(z, Scalar::one(z.field())); }

ProjPoint ProjPoint::infinity(const FieldPtr& f) { return ProjPoint(Scalar::one(f), Scalar::zero(f)); }

Scalar ProjPoint::value() const {
  if (is_infinity()) throw Error(ErrorCode::InvalidInput, "point at infinity has no affine value");
  return x_;
}

std::strong_ordering ProjPoint::operator<=>(const ProjPoint& o) const {
  if (is_infinity() || o.is_infinity()) {
    if (is_infinity() && o.is_infinity()) return std::strong_ordering::equal;
    return is_infinity() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x_ <=> o.x_;
}

std::string ProjPoint::to_string() const { return is_infinity() ? "inf" : x_.to_string(); }

Moebius::Moebius(Scalar a, Scalar b, Scalar c, Scalar d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  for (int i = 1; i < 4; ++i) require_same_field(m_[0].field(), m_[i].field());
  if ((m_[0] * m_[3] - m_[1] * m_[2]).is_zero())
    throw Error(ErrorCode::DegenerateInput, "Moebius matrix is singular");
  normalize();
}

void Moebius::normalize() {
  int i = 0;
  while (m_[i].is_zero()) ++i;
  const Scalar s = m_[i].inv();
  for (auto& x : m_) x *= s;
}

Moebius Moebius::identity(const FieldPtr& f) {
  return Moebius(Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f));
}

Moebius Moebius::to_standard(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3) {
  // l_i(p) vanishes at p_i
  auto l = [](const ProjPoint& pi, const ProjPoint& p) { return pi.y() * p.x() - pi.x() * p.y(); };
  const Scalar l1 = l(p1, p3), l2 = l(p2, p3);
  return Moebius(l1 * p2.y(), -(l1 * p2.x()), l2 * p1.y(), -(l2 * p1.x()));
}

Moebius Moebius::through(const std::array<ProjPoint, 3>& p, const std::array<ProjPoint, 3>& q) {
  return to_standard(q[0], q[1], q[2]).inverse() * to_standard(p[0], p[1], p[2]);
}

ProjPoint Moebius::operator()(const ProjPoint& p) const {
  require_same_field(field(), p.field());
  return ProjPoint(m_[0] * p.x() + m_[1] * p.y(), m_[2] * p.x() + m_[3] * p.y());
}

Moebius Moebius::operator*(const Moebius& o) const {
  const auto& a = m_;
  const auto& b = o.m_;
  return Moebius(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                 a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]);
}

Moebius Moebius::inverse() const { return Moebius(m_[3], -m_[1], -m_[2], m_[0]); }

bool Moebius::is_identity() const { return *this == identity(field()); }

bool Moebius::defined_over(const mpz_class& q) const {
  if (!field()->is_finite()) return true;
  for (const auto& x : m_)
    if (!in_subfield(x, q)) return false;
  return true;
}

std::string Moebius::to_string() const {
  return "[[" + m_[0].to_string() + "," + m_[1].to_string() + "],[" + m_[2].to_string() + "," +
         m_[3].to_string() + "]]";
}

PointConfiguration::PointConfiguration(std::vector<ProjPoint> points) : pts_(std::move(points)) {
  if (pts_.size() != 5) throw Error(ErrorCode::InvalidInput, "a configuration has exactly 5 points");
  for (const auto& p : pts_) require_same_field(pts_[0].field(), p.field());
  std::sort(pts_.begin(), pts_.end());
  if (std::adjacent_find(pts_.begin(), pts_.end()) != pts_.end())
    throw Error(ErrorCode::InvalidInput, "configuration points must be distinct");
}

int PointConfiguration::index_of(const ProjPoint& p) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
  if (it == pts_.end() || !(*it == p)) return -1;
  return static_cast<int>(it - pts_.begin());
}

std::optional<Perm5> induced_perm(const Moebius& m, const PointConfiguration& c) {
  Perm5 perm{};
  for (int i = 0; i < 5; ++i) {
    perm[i] = c.index_of(m(c.points()[i]));
    if (perm[i] < 0) return std::nullopt;
  }
  return perm;
}

namespace {

template <class Visit>
void for_each_candidate(const PointConfiguration& c1, const PointConfiguration& c2, Visit&& visit) {
  require_same_field(c1.field(), c2.field());
  const auto& p = c1.points();
  const auto& q = c2.points();
  const std::array<ProjPoint, 3> src{p[0], p[1], p[2]};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        if (i == j || j == k || i == k) continue;
        const Moebius m = Moebius::through(src, {q[i], q[j], q[k]});
        if (!visit(m)) return;
      }
}

}  // namespace

std::optional<Moebius> pgl2_match(const PointConfiguration& c1, const PointConfiguration& c2) {
  std::optional<Moebius> found;
  for_each_candidate(c1, c2, [&](const Moebius& m) {
    for (const auto& x : c1.points())
      if (!c2.contains(m(x))) return true;
    found = m;
    return false;
  });
  return found;
}

std::vector<AutElement> aut_group(const PointConfiguration& c) {
  std::vector<AutElement> out;
  for_each_candidate(c, c, [&](const Moebius& m) {
    if (auto perm = induced_perm(m, c)) out.push_back({m, *perm});
    return true;
  });
  // the first candidate fixes the first three points, hence is the identity
  return out;
}

}  // namespace qdp4
