#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "gmorita/matrix.hpp"

namespace gmorita {

/// Multivariate polynomial in t_0..t_{k-1} with exact coefficients, kept in
/// canonical form (no zero coefficients stored).
class GenericDetPoly {
 public:
  using Exponents = std::vector<std::uint16_t>;

  GenericDetPoly(Field field, std::size_t variables) : field_(field), variables_(variables) {}

  static GenericDetPoly constant(const Field& f, std::size_t variables, const Scalar& c) {
    GenericDetPoly p(f, variables);
    p.add_term(Exponents(variables, 0), c);
    return p;
  }

  const Field& field() const { return field_; }
  std::size_t variables() const { return variables_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GenericDetPoly& operator+=(const GenericDetPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  /// this · (Σ coeffs[i] t_i) · scale
  GenericDetPoly times_linear(const Vector& coeffs, const Scalar& scale) const {
    GenericDetPoly out(field_, variables_);
    for (const auto& [e, c] : terms_) {
      const Scalar cs = c * scale;
      for (std::size_t i = 0; i < variables_; ++i) {
        if (coeffs[i].is_zero()) continue;
        Exponents e2 = e;
        ++e2[i];
        out.add_term(e2, cs * coeffs[i]);
      }
    }
    return out;
  }

  std::size_t degree_in(std::size_t var) const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, e[var]);
    return d;
  }

  Scalar evaluate(const Vector& point) const {
    Scalar total = field_.zero();
    for (const auto& [e, c] : terms_) {
      Scalar term = c;
      for (std::size_t i = 0; i < variables_; ++i)
        for (std::uint16_t k = 0; k < e[i]; ++k) term *= point[i];
      total += term;
    }
    return total;
  }

  /// Fixes t_var = value; the variable stays in the index space with exponent 0.
  GenericDetPoly substitute(std::size_t var, const Scalar& value) const {
    GenericDetPoly out(field_, variables_);
    for (const auto& [e, c] : terms_) {
      Scalar coeff = c;
      for (std::uint16_t k = 0; k < e[var]; ++k) coeff *= value;
      Exponents e2 = e;
      e2[var] = 0;
      out.add_term(e2, coeff);
    }
    return out;
  }

  /// Over F_p, the unique representative of the same function F_p^k → F_p
  /// with every exponent below p (t^p = t). Identity over the rationals.
  GenericDetPoly reduced_as_function() const {
    if (!field_.is_prime()) return *this;
    const std::uint32_t p = field_.modulus();
    GenericDetPoly out(field_, variables_);
    for (const auto& [e, c] : terms_) {
      Exponents e2 = e;
      for (auto& x : e2)
        if (x >= p) x = static_cast<std::uint16_t>((x - 1) % (p - 1) + 1);
      out.add_term(e2, c);
    }
    return out;
  }

 private:
  Field field_;
  std::size_t variables_;
  std::map<Exponents, Scalar> terms_;
};

/// det(Σ t_i F_i) expanded symbolically. Division-free Laplace expansion over
/// row prefixes memoized on the set of used columns.
inline GenericDetPoly generic_determinant(const Field& f, std::size_t n, const std::vector<Matrix>& basis) {
  const std::size_t k = basis.size();
  for (const auto& m : basis) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::ShapeMismatch, "generic_determinant: sizes differ");
  }
  if (n > 24) throw Error(ErrorCode::ShapeMismatch, "generic_determinant: matrix too large for symbolic expansion");

  std::map<std::uint32_t, GenericDetPoly> layer;
  layer.emplace(0u, GenericDetPoly::constant(f, k, f.one()));
  const Scalar plus = f.one();
  const Scalar minus = -f.one();
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Vector> entries(n, zero_vector(f, k));
    std::vector<bool> nonzero(n, false);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < k; ++i) {
        entries[j][i] = basis[i](r, j);
        if (!entries[j][i].is_zero()) nonzero[j] = true;
      }
    std::map<std::uint32_t, GenericDetPoly> next;
    for (const auto& [mask, poly] : layer) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t bit = 1u << j;
        if ((mask & bit) || !nonzero[j]) continue;
        const bool odd = std::popcount(mask >> (j + 1)) % 2 == 1;
        auto term = poly.times_linear(entries[j], odd ? minus : plus);
        if (term.is_zero()) continue;
        auto [it, inserted] = next.try_emplace(mask | bit, std::move(term));
        if (!inserted) {
          it->second += term;
        }
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    }
    layer = std::move(next);
  }
  const std::uint32_t full = n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  auto it = layer.find(full);
  return it == layer.end() ? GenericDetPoly(f, k) : it->second;
}

namespace detail {

inline Matrix combine(const Field& f, std::size_t n, const std::vector<Matrix>& basis, const Vector& coeffs) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!coeffs[i].is_zero()) m += coeffs[i] * basis[i];
  }
  return m;
}

// A point where a nonzero polynomial (every exponent of t_i at most deg_i,
// with deg_i < |field|) does not vanish: try t_i = 0..deg_i one variable at a time.
inline Vector nonvanishing_point(const GenericDetPoly& poly) {
  const Field& f = poly.field();
  Vector point = zero_vector(f, poly.variables());
  GenericDetPoly current = poly;
  for (std::size_t var = 0; var < poly.variables(); ++var) {
    const std::size_t deg = current.degree_in(var);
    bool found = false;
    for (std::size_t v = 0; v <= deg && !found; ++v) {
      auto next = current.substitute(var, f.from_int(static_cast<long long>(v)));
      if (!next.is_zero()) {
        point[var] = f.from_int(static_cast<long long>(v));
        current = std::move(next);
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::PreconditionViolation, "nonvanishing_point: polynomial vanishes on grid");
  }
  return point;
}

}  // namespace detail

/// Coefficients c with Σ c_i F_i invertible, or nullopt when every element of
/// the span is singular. Existence is decided by expanding det(Σ t_i F_i)
/// (reduced to a function on F_p^k over prime fields). Cheap deterministic
/// probes over {0,1}^k and a fixed pseudo-random sequence run first; any
/// nonzero determinant found there is already a witness.
inline std::optional<Vector> invertible_combination(const Field& f, std::size_t n, const std::vector<Matrix>& basis) {
  const std::size_t k = basis.size();
  if (n == 0) return zero_vector(f, k);
  if (k == 0) return std::nullopt;

  if (k <= 10) {
    for (std::uint32_t bits = 1; bits < (1u << k); ++bits) {
      Vector c = zero_vector(f, k);
      // lexicographic order with t_0 most significant
      for (std::size_t i = 0; i < k; ++i)
        if (bits & (1u << (k - 1 - i))) c[i] = f.one();
      if (!determinant(detail::combine(f, n, basis, c)).is_zero()) return c;
    }
  }

  // fixed seed keeps results reproducible; a miss here proves nothing
  std::mt19937 rng(0x5eed);
  const long long range = f.is_prime() ? static_cast<long long>(f.modulus()) : 101;
  for (int probe = 0; probe < 64; ++probe) {
    Vector c = zero_vector(f, k);
    for (std::size_t i = 0; i < k; ++i) c[i] = f.from_int(static_cast<long long>(rng() % static_cast<std::uint32_t>(range)));
    if (!determinant(detail::combine(f, n, basis, c)).is_zero()) return c;
  }

  const auto poly = generic_determinant(f, n, basis).reduced_as_function();
  if (poly.is_zero()) return std::nullopt;
  return detail::nonvanishing_point(poly);
}

inline std::optional<Matrix> generic_invertible_element(const std::vector<Matrix>& basis) {
  if (basis.empty()) return std::nullopt;
  const Field f = basis.front().field();
  const std::size_t n = basis.front().rows();
  for (const auto& m : basis) {
    if (!m.is_square() || m.rows() != n) throw Error(ErrorCode::ShapeMismatch, "generic_invertible_element: sizes differ");
  }
  auto c = invertible_combination(f, n, basis);
  if (!c) return std::nullopt;
  return detail::combine(f, n, basis, *c);
}

}  // namespace gmorita
