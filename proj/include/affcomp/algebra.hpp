#pragma once

// Exact arithmetic in the scalar division ring K: prime fields GF(p),
// extension fields GF(p^k) given by an explicit modulus polynomial, and the
// rational quaternions. Domains are interned for the lifetime of the process,
// so a Scalar only carries a plain pointer to its domain.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace affcomp {

class Scalar;

/// Raised when two values from different domains are combined.
class domain_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation needs to enumerate an infinite domain.
class infinite_domain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Rational quaternions a + b i + c j + d k with i^2 = j^2 = -1, ij = k = -ji.

struct Quaternion {
  mpq_class a, b, c, d;

  Quaternion() = default;
  Quaternion(mpq_class a_, mpq_class b_, mpq_class c_, mpq_class d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    canonicalize();
  }

  void canonicalize() {
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    d.canonicalize();
  }

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }
  bool is_real() const { return sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }

  mpq_class norm() const { return a * a + b * b + c * c + d * d; }
  Quaternion conjugate() const { return {a, -b, -c, -d}; }

  friend Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Quaternion operator-(const Quaternion& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
  }

  Quaternion inverse() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw std::domain_error("division by zero quaternion");
    return {a / n, -b / n, -c / n, -d / n};
  }

  friend bool operator==(const Quaternion& x, const Quaternion& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend std::strong_ordering operator<=>(const Quaternion& x, const Quaternion& y) {
    const std::array<const mpq_class*, 4> lhs{&x.a, &x.b, &x.c, &x.d};
    const std::array<const mpq_class*, 4> rhs{&y.a, &y.b, &y.c, &y.d};
    for (std::size_t i = 0; i < 4; ++i) {
      int s = cmp(*lhs[i], *rhs[i]);
      if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    std::ostringstream out;
    bool first = true;
    auto term = [&](const mpq_class& v, const char* unit) {
      if (sgn(v) == 0) return;
      bool unit_only = *unit != '\0' && abs(v) == 1;
      if (sgn(v) < 0) {
        out << '-';
      } else if (!first) {
        out << '+';
      }
      if (!unit_only) out << mpq_class(abs(v)).get_str();
      out << unit;
      first = false;
    };
    term(a, "");
    term(b, "i");
    term(c, "j");
    term(d, "k");
    if (first) out << '0';
    return out.str();
  }
};

// ---------------------------------------------------------------------------

/// The division ring K together with a description of its center Z.
///
/// Finite fields are commutative, so Z = K and dim_Z K = 1. For the rational
/// quaternions Z = Q and {1, i, j, k} is the Z-basis of K.
class ScalarDomain {
 public:
  enum class Kind { prime_field, extension_field, rational_quaternions };

  ScalarDomain(const ScalarDomain&) = delete;
  ScalarDomain& operator=(const ScalarDomain&) = delete;

  static const ScalarDomain& prime_field(std::uint32_t p);
  /// `modulus` lists c_0..c_k of c_0 + c_1 x + ... + c_k x^k over GF(p).
  static const ScalarDomain& extension_field(std::uint32_t p, std::vector<std::uint32_t> modulus);
  static const ScalarDomain& quaternions();

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ != Kind::rational_quaternions; }
  bool is_commutative() const { return is_finite(); }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  /// Number of elements; nullopt for the quaternions.
  std::optional<std::uint32_t> order() const {
    if (!is_finite()) return std::nullopt;
    return q_;
  }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// dim_Z K.
  std::size_t center_degree() const { return is_finite() ? 1 : 4; }
  std::string center_descriptor() const { return is_finite() ? "Z = K" : "Z = Q (real rationals)"; }
  /// Canonical config spelling: gf(p), gf(p^k; modulus=[...]) or quat(Q).
  std::string descriptor() const { return descriptor_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  /// Finite domains only: the element with canonical index `index`
  /// (coefficients of the residue read as base-p digits, c_0 least significant).
  Scalar element(std::uint32_t index) const;
  Scalar quaternion(mpq_class a, mpq_class b, mpq_class c, mpq_class d) const;

  /// Z-basis of K: {1} for finite fields, {1, i, j, k} for quaternions.
  std::vector<Scalar> center_basis() const;

  // Payload arithmetic on canonical residue indices (finite domains).
  std::uint32_t add_index(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg_index(std::uint32_t x) const;
  std::uint32_t mul_index(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inv_index(std::uint32_t x) const;

  std::string index_to_string(std::uint32_t x) const;

 private:
  ScalarDomain() = default;

  std::vector<std::uint32_t> digits(std::uint32_t x) const {
    std::vector<std::uint32_t> out(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      out[i] = x % p_;
      x /= p_;
    }
    return out;
  }
  std::uint32_t undigits(const std::vector<std::uint32_t>& ds) const {
    std::uint32_t x = 0;
    for (std::size_t i = ds.size(); i-- > 0;) x = x * p_ + ds[i];
    return x;
  }
  std::uint32_t mul_slow(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inv_slow(std::uint32_t x) const;
  void build_tables();

  Kind kind_ = Kind::prime_field;
  std::uint32_t p_ = 0;
  std::uint32_t k_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;  // monic, c_0..c_k
  std::string descriptor_;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;

  static constexpr std::uint32_t kTableLimit = 256;
};

/// An element of a ScalarDomain in canonical reduced form.
class Scalar {
 public:
  Scalar(const ScalarDomain& d, std::uint32_t index) : domain_(&d), payload_(index) {}
  Scalar(const ScalarDomain& d, Quaternion q) : domain_(&d), payload_(std::move(q)) {}

  const ScalarDomain& domain() const { return *domain_; }

  bool is_zero() const {
    if (auto* r = std::get_if<std::uint32_t>(&payload_)) return *r == 0;
    return std::get<Quaternion>(payload_).is_zero();
  }
  bool is_one() const {
    if (auto* r = std::get_if<std::uint32_t>(&payload_)) return *r == 1;
    const auto& q = std::get<Quaternion>(payload_);
    return q.a == 1 && q.is_real();
  }

  std::uint32_t index() const {
    if (auto* r = std::get_if<std::uint32_t>(&payload_)) return *r;
    throw std::logic_error("quaternion scalar has no residue index");
  }
  const Quaternion& quaternion() const { return std::get<Quaternion>(payload_); }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (auto* r = std::get_if<std::uint32_t>(&payload_)) return {*domain_, domain_->inv_index(*r)};
    return {*domain_, std::get<Quaternion>(payload_).inverse()};
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    if (auto* r = std::get_if<std::uint32_t>(&x.payload_))
      return {*x.domain_, x.domain_->add_index(*r, std::get<std::uint32_t>(y.payload_))};
    return {*x.domain_, x.quaternion() + y.quaternion()};
  }
  friend Scalar operator-(const Scalar& x) {
    if (auto* r = std::get_if<std::uint32_t>(&x.payload_)) return {*x.domain_, x.domain_->neg_index(*r)};
    return {*x.domain_, -x.quaternion()};
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    if (auto* r = std::get_if<std::uint32_t>(&x.payload_))
      return {*x.domain_, x.domain_->mul_index(*r, std::get<std::uint32_t>(y.payload_))};
    return {*x.domain_, x.quaternion() * y.quaternion()};
  }
  /// Right division x * y^{-1}.
  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    return x * y.inverse();
  }
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    return x.payload_ == y.payload_;
  }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    if (auto* r = std::get_if<std::uint32_t>(&x.payload_)) return *r <=> std::get<std::uint32_t>(y.payload_);
    return x.quaternion() <=> y.quaternion();
  }

  std::string to_string() const {
    if (auto* r = std::get_if<std::uint32_t>(&payload_)) return domain_->index_to_string(*r);
    return quaternion().to_string();
  }

 private:
  static void check_same(const Scalar& x, const Scalar& y) {
    if (x.domain_ != y.domain_)
      throw domain_mismatch("scalars from " + x.domain_->descriptor() + " and " + y.domain_->descriptor());
  }

  const ScalarDomain* domain_;
  std::variant<std::uint32_t, Quaternion> payload_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------------------
// ScalarDomain implementation

namespace detail {

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t quo = r / new_r;
    t = std::exchange(new_t, t - quo * new_t);
    r = std::exchange(new_r, r - quo * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

using Poly = std::vector<std::uint32_t>;  // coefficients over GF(p), low degree first

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of f modulo g over GF(p); g nonzero.
inline Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = mod_inverse(g.back(), p);
  while (f.size() > dg) {
    std::uint64_t factor = std::uint64_t(f.back()) * lead_inv % p;
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      std::uint64_t sub = factor * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct DomainRegistry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<ScalarDomain>> domains;

  static DomainRegistry& instance() {
    static DomainRegistry r;
    return r;
  }
};

}  // namespace detail

inline const ScalarDomain& ScalarDomain::prime_field(std::uint32_t p) {
  if (!detail::is_prime(p)) throw std::invalid_argument("gf(" + std::to_string(p) + "): characteristic is not prime");
  if (p > 46340) throw std::invalid_argument("gf(p): p too large for desk-scale arithmetic");
  std::string key = "gf(" + std::to_string(p) + ")";
  auto& reg = detail::DomainRegistry::instance();
  std::lock_guard lock(reg.mutex);
  auto& slot = reg.domains[key];
  if (!slot) {
    std::unique_ptr<ScalarDomain> d(new ScalarDomain());
    d->kind_ = Kind::prime_field;
    d->p_ = p;
    d->k_ = 1;
    d->q_ = p;
    d->modulus_ = {0, 1};
    d->descriptor_ = key;
    d->build_tables();
    slot = std::move(d);
  }
  return *slot;
}

inline const ScalarDomain& ScalarDomain::extension_field(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!detail::is_prime(p)) throw std::invalid_argument("gf(p^k): characteristic is not prime");
  for (auto& c : modulus) {
    if (c >= p) throw std::invalid_argument("gf(p^k): modulus coefficient out of range");
  }
  detail::trim(modulus);
  if (modulus.size() < 2) throw std::invalid_argument("gf(p^k): modulus must have degree >= 1");
  if (modulus.size() == 2) return prime_field(p);
  // Make monic.
  std::uint32_t lead_inv = detail::mod_inverse(modulus.back(), p);
  for (auto& c : modulus) c = static_cast<std::uint32_t>(std::uint64_t(c) * lead_inv % p);
  const std::uint32_t k = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > (1u << 20)) throw std::invalid_argument("gf(p^k): field too large for desk-scale arithmetic");
  }
  if (!detail::is_irreducible(modulus, p))
    throw std::invalid_argument("gf(p^k): modulus polynomial is reducible over GF(p)");

  std::ostringstream key;
  key << "gf(" << p << "^" << k << "; modulus=[";
  for (std::size_t i = 0; i < modulus.size(); ++i) key << (i ? "," : "") << modulus[i];
  key << "])";
  auto& reg = detail::DomainRegistry::instance();
  std::lock_guard lock(reg.mutex);
  auto& slot = reg.domains[key.str()];
  if (!slot) {
    std::unique_ptr<ScalarDomain> d(new ScalarDomain());
    d->kind_ = Kind::extension_field;
    d->p_ = p;
    d->k_ = k;
    d->q_ = static_cast<std::uint32_t>(q);
    d->modulus_ = std::move(modulus);
    d->descriptor_ = key.str();
    d->build_tables();
    slot = std::move(d);
  }
  return *slot;
}

inline const ScalarDomain& ScalarDomain::quaternions() {
  auto& reg = detail::DomainRegistry::instance();
  std::lock_guard lock(reg.mutex);
  auto& slot = reg.domains["quat(Q)"];
  if (!slot) {
    std::unique_ptr<ScalarDomain> d(new ScalarDomain());
    d->kind_ = Kind::rational_quaternions;
    d->p_ = 0;
    d->k_ = 4;
    d->descriptor_ = "quat(Q)";
    slot = std::move(d);
  }
  return *slot;
}

inline Scalar ScalarDomain::zero() const {
  if (is_finite()) return {*this, 0u};
  return {*this, Quaternion{}};
}

inline Scalar ScalarDomain::one() const {
  if (is_finite()) return {*this, 1u};
  return {*this, Quaternion{1, 0, 0, 0}};
}

inline Scalar ScalarDomain::from_int(long v) const {
  if (!is_finite()) return {*this, Quaternion{v, 0, 0, 0}};
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return {*this, static_cast<std::uint32_t>(r)};
}

inline Scalar ScalarDomain::element(std::uint32_t index) const {
  if (!is_finite()) throw infinite_domain("element(index) needs a finite domain");
  if (index >= q_) throw std::out_of_range("element index out of range for " + descriptor_);
  return {*this, index};
}

inline Scalar ScalarDomain::quaternion(mpq_class a, mpq_class b, mpq_class c, mpq_class d) const {
  if (is_finite()) throw domain_mismatch("quaternion components given for " + descriptor_);
  return {*this, Quaternion{std::move(a), std::move(b), std::move(c), std::move(d)}};
}

inline std::vector<Scalar> ScalarDomain::center_basis() const {
  if (is_finite()) return {one()};
  return {quaternion(1, 0, 0, 0), quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0), quaternion(0, 0, 0, 1)};
}

inline std::uint32_t ScalarDomain::add_index(std::uint32_t x, std::uint32_t y) const {
  if (k_ == 1) return (x + y) % p_;
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return out;
}

inline std::uint32_t ScalarDomain::neg_index(std::uint32_t x) const {
  if (k_ == 1) return (p_ - x) % p_;
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((p_ - x % p_) % p_) * place;
    x /= p_;
    place *= p_;
  }
  return out;
}

inline std::uint32_t ScalarDomain::mul_slow(std::uint32_t x, std::uint32_t y) const {
  if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t(x) * y % p_);
  auto a = digits(x), b = digits(y);
  detail::Poly prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p_);
  auto r = detail::poly_mod(std::move(prod), modulus_, p_);
  r.resize(k_, 0);
  return undigits(r);
}

inline std::uint32_t ScalarDomain::inv_slow(std::uint32_t x) const {
  if (x == 0) throw std::domain_error("division by zero");
  if (k_ == 1) return detail::mod_inverse(x, p_);
  // x^(q-2) by square and multiply.
  std::uint32_t result = 1, base = x, e = q_ - 2;
  while (e) {
    if (e & 1u) result = mul_slow(result, base);
    base = mul_slow(base, base);
    e >>= 1u;
  }
  return result;
}

inline void ScalarDomain::build_tables() {
  if (q_ > kTableLimit) return;
  mul_table_.resize(std::size_t(q_) * q_);
  inv_table_.assign(q_, 0);
  for (std::uint32_t x = 0; x < q_; ++x)
    for (std::uint32_t y = 0; y < q_; ++y) mul_table_[std::size_t(x) * q_ + y] = mul_slow(x, y);
  for (std::uint32_t x = 1; x < q_; ++x) inv_table_[x] = inv_slow(x);
}

inline std::uint32_t ScalarDomain::mul_index(std::uint32_t x, std::uint32_t y) const {
  if (!mul_table_.empty()) return mul_table_[std::size_t(x) * q_ + y];
  return mul_slow(x, y);
}

inline std::uint32_t ScalarDomain::inv_index(std::uint32_t x) const {
  if (x == 0) throw std::domain_error("division by zero");
  if (!inv_table_.empty()) return inv_table_[x];
  return inv_slow(x);
}

inline std::string ScalarDomain::index_to_string(std::uint32_t x) const {
  if (k_ == 1) return std::to_string(x);
  auto ds = digits(x);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = k_; i-- > 0;) {
    if (ds[i] == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << ds[i];
      continue;
    }
    if (ds[i] != 1) out << ds[i];
    out << 'x';
    if (i > 1) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

// ---------------------------------------------------------------------------
// Free operations

inline Scalar arith_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar arith_sub(const Scalar& a, const Scalar& b) { return a - b; }
inline Scalar arith_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar arith_div(const Scalar& a, const Scalar& b) { return a / b; }

/// True iff `a` commutes with every element of K.
inline bool is_central(const Scalar& a) {
  if (a.domain().is_commutative()) return true;
  return a.quaternion().is_real();
}

/// Components of `a` over the Z-basis returned by center_basis(), each as a
/// central element of K.
inline std::vector<Scalar> center_components(const Scalar& a) {
  const auto& d = a.domain();
  if (d.is_finite()) return {a};
  const auto& q = a.quaternion();
  return {d.quaternion(q.a, 0, 0, 0), d.quaternion(q.b, 0, 0, 0), d.quaternion(q.c, 0, 0, 0),
          d.quaternion(q.d, 0, 0, 0)};
}

/// A sequence of scalars. When `is_sample` is set the sequence does not
/// exhaust the domain, so callers must rely on membership predicates.
struct ScalarSequence {
  std::vector<Scalar> elements;
  bool is_sample = false;
};

inline constexpr std::size_t kQuaternionRandomBatch = 32;

/// Finite domains: all q elements in canonical index order. Quaternions: the
/// 81-element grid a+bi+cj+dk, a,b,c,d in {-1,0,1} (a slowest), followed by a
/// batch of pseudorandom rationals drawn from `seed`; flagged as a sample.
inline ScalarSequence scalars(const ScalarDomain& d, std::uint64_t seed = 0) {
  ScalarSequence out;
  if (d.is_finite()) {
    for (std::uint32_t x = 0; x < *d.order(); ++x) out.elements.push_back(d.element(x));
    return out;
  }
  out.is_sample = true;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int e = -1; e <= 1; ++e) out.elements.push_back(d.quaternion(a, b, c, e));
  std::mt19937_64 rng(seed);
  auto rational = [&]() -> mpq_class {
    long num = static_cast<long>(rng() % 11) - 5;
    long den = static_cast<long>(rng() % 4) + 1;
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
  };
  for (std::size_t n = 0; n < kQuaternionRandomBatch; ++n) {
    auto a = rational(), b = rational(), c = rational(), e = rational();
    out.elements.push_back(d.quaternion(a, b, c, e));
  }
  return out;
}

/// Only the 81-element grid for quaternions; all elements for finite domains.
inline ScalarSequence scalar_grid(const ScalarDomain& d) {
  auto all = scalars(d, 0);
  if (all.is_sample) all.elements.erase(all.elements.begin() + 81, all.elements.end());
  return all;
}

/// Elements of the center Z: all elements for finite fields, the rationals
/// {-1, 0, 1} (flagged as a sample) for quaternions.
inline ScalarSequence central_scalars(const ScalarDomain& d) {
  if (d.is_finite()) return scalars(d);
  return {{d.from_int(-1), d.zero(), d.one()}, true};
}

/// Parses `gf(p)`, `gf(p^k; modulus=[c_0,...,c_k])` or `quat(Q)`.
inline const ScalarDomain& parse_field_spec(const std::string& spec) {
  std::string s;
  for (char ch : spec)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto fail = [&]() -> const ScalarDomain& { throw std::invalid_argument("bad field spec: '" + spec + "'"); };
  if (s == "quat(Q)" || s == "quat(q)") return ScalarDomain::quaternions();
  if (s.rfind("gf(", 0) != 0 || s.back() != ')') return fail();
  std::string body = s.substr(3, s.size() - 4);
  auto read_uint = [&](const std::string& t) -> std::uint32_t {
    if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail();
    return static_cast<std::uint32_t>(std::stoul(t));
  };
  auto caret = body.find('^');
  if (caret == std::string::npos) return ScalarDomain::prime_field(read_uint(body));
  auto semi = body.find(';');
  if (semi == std::string::npos) return fail();
  std::uint32_t p = read_uint(body.substr(0, caret));
  std::uint32_t k = read_uint(body.substr(caret + 1, semi - caret - 1));
  std::string rest = body.substr(semi + 1);
  const std::string prefix = "modulus=[";
  if (rest.rfind(prefix, 0) != 0 || rest.back() != ']') return fail();
  std::string list = rest.substr(prefix.size(), rest.size() - prefix.size() - 1);
  std::vector<std::uint32_t> coeffs;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) coeffs.push_back(read_uint(item));
  if (coeffs.size() != std::size_t(k) + 1 || coeffs.back() == 0)
    throw std::invalid_argument("bad field spec: '" + spec + "': modulus must have exactly k+1 coefficients with c_k != 0");
  return ScalarDomain::extension_field(p, std::move(coeffs));
}

/// Refuses infinite domains; used by operations that must enumerate K.
inline std::vector<Scalar> enumerate_scalars(const ScalarDomain& d, const char* what) {
  if (!d.is_finite()) throw infinite_domain(std::string(what) + ": enumeration over " + d.descriptor() + " refused");
  return scalars(d).elements;
}

}  // namespace affcomp
