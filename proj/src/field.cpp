#include "qdp4/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "fp_poly.hpp"

namespace qdp4 {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Arithmetic: return "arithmetic";
    case ErrorCode::DescriptorMismatch: return "descriptor-mismatch";
    case ErrorCode::DegenerateInput: return "degenerate-input";
    case ErrorCode::UnsupportedField: return "unsupported-field";
    case ErrorCode::DegeneratePencil: return "degenerate-pencil";
    case ErrorCode::NotSmooth: return "not-smooth";
    case ErrorCode::UnsupportedSplitting: return "unsupported-splitting";
    case ErrorCode::InvalidNormalForm: return "invalid-normal-form";
    case ErrorCode::ResourceLimit: return "resource-limit";
    case ErrorCode::InvalidGroup: return "invalid-group";
    case ErrorCode::FiberMismatch: return "fiber-mismatch";
    case ErrorCode::InvalidClass: return "invalid-class";
    case ErrorCode::InvalidRoot: return "invalid-root";
    case ErrorCode::InvalidAut: return "invalid-aut";
    case ErrorCode::DegenerateForm: return "degenerate-form";
    case ErrorCode::InvalidSplitting: return "invalid-splitting";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

constexpr std::uint64_t kMaxCharacteristic = 1ull << 31;

void check_characteristic(std::uint64_t p) {
  if (p == 2 || !is_prime(p) || p >= kMaxCharacteristic)
    throw Error(ErrorCode::UnsupportedField,
                "characteristic must be an odd prime below 2^31, got " + std::to_string(p));
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned k) {
  // counter over (c0, ..., c_{k-1}) with c0 most significant
  std::vector<std::uint64_t> digits(k, 0);
  for (;;) {
    if (digits[0] != 0) {
      std::vector<std::uint64_t> f(digits);
      f.push_back(1);
      if (fp::is_irreducible(f, p)) return f;
    }
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && ++digits[i] == p) digits[i--] = 0;
    if (i < 0) break;
  }
  throw Error(ErrorCode::UnsupportedField, "no irreducible polynomial found");
}

}  // namespace

Field::Field(FieldKind kind, std::uint64_t p, std::vector<std::uint64_t> modulus)
    : kind_(kind), p_(p), modulus_(std::move(modulus)) {
  degree_ = kind_ == FieldKind::Extension ? static_cast<unsigned>(modulus_.size() - 1) : 1;
}

FieldPtr Field::rationals() {
  static const FieldPtr q(new Field(FieldKind::Rationals, 0, {}));
  return q;
}

FieldPtr Field::prime(std::uint64_t p) {
  check_characteristic(p);
  std::lock_guard lock(cache_mutex());
  static std::map<std::uint64_t, FieldPtr> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  FieldPtr f(new Field(FieldKind::Prime, p, {0, 1}));
  cache.emplace(p, f);
  return f;
}

FieldPtr Field::extension(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  check_characteristic(p);
  for (auto& c : modulus) {
    if (c >= p) throw Error(ErrorCode::InvalidInput, "modulus coefficient out of range [0, p)");
  }
  fp::trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1)
    throw Error(ErrorCode::InvalidInput, "modulus must be monic of degree >= 1");
  if (modulus.size() == 2) return prime(p);
  if (!fp::is_irreducible(modulus, p))
    throw Error(ErrorCode::InvalidInput, "modulus is not irreducible over F_" + std::to_string(p));
  FieldPtr canon = canonical(p, static_cast<unsigned>(modulus.size() - 1));
  if (canon->modulus() == modulus) return canon;
  return FieldPtr(new Field(FieldKind::Extension, p, std::move(modulus)));
}

FieldPtr Field::canonical(std::uint64_t p, unsigned degree) {
  if (degree == 0) throw Error(ErrorCode::InvalidInput, "extension degree must be >= 1");
  if (degree == 1) return prime(p);
  check_characteristic(p);
  {
    std::lock_guard lock(cache_mutex());
    static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr> cache;
    auto it = cache.find({p, degree});
    if (it != cache.end()) return it->second;
    FieldPtr f(new Field(FieldKind::Extension, p, smallest_irreducible(p, degree)));
    cache.emplace(std::make_pair(p, degree), f);
    return f;
  }
}

mpz_class Field::order() const {
  if (kind_ == FieldKind::Rationals) return 0;
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p_, degree_);
  return r;
}

bool Field::is_canonical() const {
  if (kind_ != FieldKind::Extension) return true;
  return canonical(p_, degree_)->modulus() == modulus_;
}

bool Field::operator==(const Field& other) const {
  return kind_ == other.kind_ && p_ == other.p_ && modulus_ == other.modulus_;
}

std::string Field::describe() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "F_" + std::to_string(p_);
    case FieldKind::Extension: {
      std::ostringstream os;
      os << "F_" << p_ << "^" << degree_ << "[";
      bool first = true;
      for (std::size_t i = modulus_.size(); i-- > 0;) {
        if (modulus_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || modulus_[i] != 1) os << modulus_[i];
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
      }
      os << "]";
      return os.str();
    }
  }
  return "?";
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b))
    throw Error(ErrorCode::DescriptorMismatch,
                "field mismatch: " + (a ? a->describe() : std::string("<none>")) + " vs " +
                    (b ? b->describe() : std::string("<none>")));
}

// ---------------------------------------------------------------------------

Scalar Scalar::zero(FieldPtr f) { return from_int(std::move(f), 0); }
Scalar Scalar::one(FieldPtr f) { return from_int(std::move(f), 1); }

Scalar Scalar::from_int(FieldPtr f, long long v) {
  Scalar s;
  if (f->kind() == FieldKind::Rationals) {
    s.q_ = mpq_class(static_cast<long>(v));
  } else {
    const auto p = static_cast<long long>(f->characteristic());
    long long r = v % p;
    if (r < 0) r += p;
    s.v_.assign(f->degree(), 0);
    s.v_[0] = static_cast<std::uint64_t>(r);
  }
  s.field_ = std::move(f);
  return s;
}

Scalar Scalar::from_rational(FieldPtr f, const mpq_class& q) {
  if (f->kind() == FieldKind::Rationals) {
    Scalar s;
    s.field_ = std::move(f);
    s.q_ = q;
    s.q_.canonicalize();
    return s;
  }
  const mpz_class p(static_cast<unsigned long>(f->characteristic()));
  mpz_class den = q.get_den() % p;
  if (den == 0) throw Error(ErrorCode::Arithmetic, "denominator divisible by the characteristic");
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  Scalar n = from_int(f, num.get_si());
  Scalar d = from_int(f, den.get_si());
  return n / d;
}

Scalar Scalar::from_coeffs(FieldPtr f, std::vector<std::uint64_t> coeffs) {
  if (!f->is_finite()) throw Error(ErrorCode::UnsupportedField, "coefficient vectors need a finite field");
  const auto p = f->characteristic();
  for (auto& c : coeffs) c %= p;
  if (coeffs.size() > f->degree()) {
    fp::Vec r = fp::rem(coeffs, f->modulus(), p);
    coeffs = std::move(r);
  }
  coeffs.resize(f->degree(), 0);
  Scalar s;
  s.field_ = std::move(f);
  s.v_ = std::move(coeffs);
  return s;
}

Scalar Scalar::generator(FieldPtr f) {
  if (!f->is_finite()) throw Error(ErrorCode::UnsupportedField, "generator of Q is undefined");
  return from_coeffs(std::move(f), {0, 1});
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  s = strip(s);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty integer");
  std::string str(s);
  if (str.front() == '+') str.erase(0, 1);
  for (std::size_t i = 0; i < str.size(); ++i) {
    if (!(std::isdigit(static_cast<unsigned char>(str[i])) || (i == 0 && str[i] == '-')))
      throw Error(ErrorCode::Parse, "malformed integer '" + std::string(s) + "'");
  }
  return mpz_class(str, 10);
}

}  // namespace

Scalar Scalar::parse(FieldPtr f, std::string_view text) {
  text = strip(text);
  if (text.empty()) throw Error(ErrorCode::Parse, "empty scalar");
  if (text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorCode::Parse, "unterminated coefficient vector");
    if (!f->is_finite()) throw Error(ErrorCode::Parse, "coefficient vector given for Q");
    std::vector<std::uint64_t> coeffs;
    std::string_view body = text.substr(1, text.size() - 2);
    const mpz_class p(static_cast<unsigned long>(f->characteristic()));
    while (!strip(body).empty()) {
      auto comma = body.find(',');
      mpz_class c = parse_integer(body.substr(0, comma)) % p;
      if (c < 0) c += p;
      coeffs.push_back(c.get_ui());
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (coeffs.size() > f->degree())
      throw Error(ErrorCode::Parse, "coefficient vector longer than the field degree");
    return from_coeffs(std::move(f), std::move(coeffs));
  }
  auto slash = text.find('/');
  mpq_class q;
  if (slash == std::string_view::npos) {
    q = mpq_class(parse_integer(text));
  } else {
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::Arithmetic, "zero denominator in '" + std::string(text) + "'");
    q = mpq_class(parse_integer(text.substr(0, slash)), den);
    q.canonicalize();
  }
  return from_rational(std::move(f), q);
}

bool Scalar::is_zero() const {
  if (field_->kind() == FieldKind::Rationals) return q_ == 0;
  return std::all_of(v_.begin(), v_.end(), [](std::uint64_t c) { return c == 0; });
}

bool Scalar::is_one() const {
  if (field_->kind() == FieldKind::Rationals) return q_ == 1;
  if (v_[0] != 1) return false;
  return std::all_of(v_.begin() + 1, v_.end(), [](std::uint64_t c) { return c == 0; });
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(field_, o.field_);
  Scalar r;
  r.field_ = field_;
  if (field_->kind() == FieldKind::Rationals) {
    r.q_ = q_ + o.q_;
  } else {
    const auto p = field_->characteristic();
    r.v_.resize(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] = fp::addmod(v_[i], o.v_[i], p);
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_field(field_, o.field_);
  Scalar r;
  r.field_ = field_;
  if (field_->kind() == FieldKind::Rationals) {
    r.q_ = q_ - o.q_;
  } else {
    const auto p = field_->characteristic();
    r.v_.resize(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] = fp::submod(v_[i], o.v_[i], p);
  }
  return r;
}

Scalar Scalar::operator-() const { return zero(field_) - *this; }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(field_, o.field_);
  Scalar r;
  r.field_ = field_;
  switch (field_->kind()) {
    case FieldKind::Rationals:
      r.q_ = q_ * o.q_;
      break;
    case FieldKind::Prime:
      r.v_ = {fp::mulmod(v_[0], o.v_[0], field_->characteristic())};
      break;
    case FieldKind::Extension: {
      fp::Vec prod = fp::rem(fp::mul(v_, o.v_, field_->characteristic()), field_->modulus(),
                             field_->characteristic());
      prod.resize(field_->degree(), 0);
      r.v_ = std::move(prod);
      break;
    }
  }
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorCode::Arithmetic, "division by zero");
  Scalar r;
  r.field_ = field_;
  switch (field_->kind()) {
    case FieldKind::Rationals:
      r.q_ = 1 / q_;
      break;
    case FieldKind::Prime:
      r.v_ = {fp::invmod(v_[0], field_->characteristic())};
      break;
    case FieldKind::Extension: {
      fp::Vec a = v_;
      fp::trim(a);
      fp::Vec i = fp::invmod_poly(a, field_->modulus(), field_->characteristic());
      i.resize(field_->degree(), 0);
      r.v_ = std::move(i);
      break;
    }
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same_field(field_, o.field_);
  return *this * o.inv();
}

Scalar Scalar::pow(const mpz_class& e) const {
  if (e < 0) return inv().pow(mpz_class(-e));
  Scalar result = one(field_);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!same_field(field_, o.field_)) return false;
  if (field_->kind() == FieldKind::Rationals) return q_ == o.q_;
  return v_ == o.v_;
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
  require_same_field(field_, o.field_);
  if (field_->kind() == FieldKind::Rationals) {
    const int c = cmp(q_, o.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return v_ <=> o.v_;
}

std::string Scalar::to_string() const {
  switch (field_->kind()) {
    case FieldKind::Rationals: return q_.get_str();
    case FieldKind::Prime: return std::to_string(v_[0]);
    case FieldKind::Extension: {
      std::string s = "[";
      for (std::size_t i = 0; i < v_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v_[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

bool is_square(const Scalar& a) {
  if (!a.field()->is_finite())
    throw Error(ErrorCode::UnsupportedField, "is_square is implemented for finite fields only");
  if (a.is_zero()) throw Error(ErrorCode::DegenerateInput, "is_square of zero");
  mpz_class e = (a.field()->order() - 1) / 2;
  return a.pow(e).is_one();
}

bool in_subfield(const Scalar& a, const mpz_class& q) {
  if (!a.field()->is_finite()) return true;
  return a.pow(q) == a;
}

}  // namespace qdp4
