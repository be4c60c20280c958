#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "gmorita/error.hpp"

namespace gmorita {

class Scalar;

/// The ground field: either the rationals or a prime field F_p with p < 2^31.
class Field {
 public:
  enum class Kind { Rational, Prime };

  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime(std::uint32_t p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p)) {
      throw Error(ErrorCode::ParseError, "modulus " + std::to_string(p) + " is not a prime below 2^31");
    }
    Field f;
    f.kind_ = Kind::Prime;
    f.modulus_ = p;
    return f;
  }

  /// Accepts "Q" or "Fp:<p>".
  static Field parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.rfind("Fp:", 0) == 0) {
      const std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(ErrorCode::ParseError, "bad field '" + std::string(text) + "'");
      }
      return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw Error(ErrorCode::ParseError, "bad field '" + std::string(text) + "'");
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  bool is_prime() const { return kind_ == Kind::Prime; }
  /// 0 for the rationals.
  std::uint32_t modulus() const { return modulus_; }

  std::string name() const { return is_rational() ? "Q" : "Fp:" + std::to_string(modulus_); }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;

  static Field unchecked_prime(std::uint32_t p) {
    Field f;
    f.kind_ = Kind::Prime;
    f.modulus_ = p;
    return f;
  }

  static bool is_prime(std::uint32_t p) {
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) return false;
    }
    return true;
  }

  Kind kind_ = Kind::Rational;
  std::uint32_t modulus_ = 0;
};

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (gmp canonical form); prime-field residues live in [0, p).
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}

  Scalar(const Field& field, long long v) {
    if (field.is_rational()) {
      value_ = mpq_class(static_cast<long>(v));
    } else {
      const auto p = static_cast<long long>(field.modulus());
      long long r = v % p;
      if (r < 0) r += p;
      value_ = Residue{r, field.modulus()};
    }
  }

  explicit Scalar(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }

  static Scalar residue(long long r, std::uint32_t p) { return Scalar(Field::prime(p), r); }

  Field field() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return Field::unchecked_prime(r->modulus);
    return Field::rationals();
  }

  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }

  const mpq_class& rational_value() const { return std::get<mpq_class>(value_); }
  long long residue_value() const { return std::get<Residue>(value_).value; }

  bool is_zero() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
    return std::get<Residue>(value_).value == 0;
  }

  bool is_one() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
    return std::get<Residue>(value_).value == 1;
  }

  Scalar operator-() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
    const auto& r = std::get<Residue>(value_);
    return from_residue(r.value == 0 ? 0 : r.modulus - r.value, r.modulus);
  }

  Scalar& operator+=(const Scalar& o) {
    check_same(o);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
      *q += std::get<mpq_class>(o.value_);
    } else {
      auto& r = std::get<Residue>(value_);
      r.value += std::get<Residue>(o.value_).value;
      if (r.value >= r.modulus) r.value -= r.modulus;
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    check_same(o);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
      *q -= std::get<mpq_class>(o.value_);
    } else {
      auto& r = std::get<Residue>(value_);
      r.value -= std::get<Residue>(o.value_).value;
      if (r.value < 0) r.value += r.modulus;
    }
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    check_same(o);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
      *q *= std::get<mpq_class>(o.value_);
    } else {
      auto& r = std::get<Residue>(value_);
      r.value = (r.value * std::get<Residue>(o.value_).value) % r.modulus;
    }
    return *this;
  }

  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(1 / *q));
    const auto& r = std::get<Residue>(value_);
    return from_residue(mod_pow(r.value, r.modulus - 2, r.modulus), r.modulus);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) return false;
    if (const auto* q = std::get_if<mpq_class>(&a.value_)) return *q == std::get<mpq_class>(b.value_);
    const auto& ra = std::get<Residue>(a.value_);
    const auto& rb = std::get<Residue>(b.value_);
    return ra.modulus == rb.modulus && ra.value == rb.value;
  }

  /// "num/den" for rationals, "r mod p" for residues.
  std::string to_string() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
      return q->get_num().get_str() + "/" + q->get_den().get_str();
    }
    const auto& r = std::get<Residue>(value_);
    return std::to_string(r.value) + " mod " + std::to_string(r.modulus);
  }

  /// Short human form: "3", "-1/2", "5".
  std::string to_short_string() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    return std::to_string(std::get<Residue>(value_).value);
  }

  /// Parses "n", "n/d" or "r mod p" into `field`. Rational text is reduced
  /// into a prime field when `field` is F_p.
  static Scalar parse(const Field& field, std::string_view text) {
    std::string s(text);
    const auto mod_pos = s.find(" mod ");
    if (mod_pos != std::string::npos) {
      const auto p = parse_integer(s.substr(mod_pos + 5));
      if (!field.is_prime() || mpz_class(field.modulus()) != p) {
        throw Error(ErrorCode::ScalarKindMismatch, "scalar '" + s + "' does not belong to " + field.name());
      }
      return from_mpz(field, parse_integer(s.substr(0, mod_pos)));
    }
    const auto slash = s.find('/');
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = slash == std::string::npos ? mpz_class(1) : parse_integer(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    if (field.is_rational()) return Scalar(mpq_class(num, den));
    return from_mpz(field, num) / from_mpz(field, den);
  }

  static Scalar from_mpz(const Field& field, const mpz_class& v) {
    if (field.is_rational()) return Scalar(mpq_class(v));
    mpz_class r = v % field.modulus();
    if (r < 0) r += field.modulus();
    return from_residue(r.get_si(), field.modulus());
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_short_string(); }

 private:
  struct Residue {
    long long value;
    std::uint32_t modulus;
  };

  static Scalar from_residue(long long r, std::uint32_t p) {
    Scalar s;
    s.value_ = Residue{r, p};
    return s;
  }

  static mpz_class parse_integer(const std::string& raw) {
    const auto first = raw.find_first_not_of(' ');
    const auto last = raw.find_last_not_of(' ');
    if (first == std::string::npos) throw Error(ErrorCode::ParseError, "empty scalar");
    const std::string t = raw.substr(first, last - first + 1);
    mpz_class v;
    if (v.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) {
      throw Error(ErrorCode::ParseError, "bad integer '" + t + "'");
    }
    return v;
  }

  static long long mod_pow(long long b, long long e, long long m) {
    long long r = 1;
    b %= m;
    while (e > 0) {
      if (e & 1) r = r * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return r;
  }

  void check_same(const Scalar& o) const {
    if (value_.index() != o.value_.index() ||
        (!is_rational() && std::get<Residue>(value_).modulus != std::get<Residue>(o.value_).modulus)) {
      throw Error(ErrorCode::ScalarKindMismatch, field().name() + " vs " + o.field().name());
    }
  }

  std::variant<mpq_class, Residue> value_;
};

inline Scalar Field::zero() const { return Scalar(*this, 0); }
inline Scalar Field::one() const { return Scalar(*this, 1); }
inline Scalar Field::from_int(long long v) const { return Scalar(*this, v); }

}  // namespace gmorita
