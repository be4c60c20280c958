#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmorita/det_poly.hpp"
#include "gmorita/group.hpp"
#include "gmorita/matrix.hpp"
#include "gmorita/report.hpp"

namespace gmorita {

/// Finite-dimensional G-graded algebra given by structure constants on a
/// homogeneous basis. The constructor only checks shapes; the algebra axioms
/// are checked by check_graded_algebra.
class GradedAlgebra {
 public:
  GradedAlgebra(FiniteGroup group, Field field, std::vector<GroupElt> degree, std::vector<std::vector<Vector>> structconst,
                Vector unit, std::vector<std::string> names = {})
      : group_(std::move(group)),
        field_(field),
        degree_(std::move(degree)),
        structconst_(std::move(structconst)),
        unit_(std::move(unit)),
        names_(std::move(names)) {
    const std::size_t d = degree_.size();
    if (structconst_.size() != d || unit_.size() != d) throw Error(ErrorCode::ShapeMismatch, "algebra: dim mismatch");
    for (const auto& row : structconst_) {
      if (row.size() != d) throw Error(ErrorCode::ShapeMismatch, "algebra: structconst row length");
      for (const auto& v : row) {
        if (v.size() != d) throw Error(ErrorCode::ShapeMismatch, "algebra: structconst vector length");
        for (const auto& s : v)
          if (!(s.field() == field_)) throw Error(ErrorCode::ScalarKindMismatch, "algebra: structconst field");
      }
    }
    for (auto g : degree_)
      if (g.index >= group_.order()) throw Error(ErrorCode::ShapeMismatch, "algebra: degree out of range");
    if (names_.empty())
      for (std::size_t i = 0; i < d; ++i) names_.push_back("e" + std::to_string(i));
    if (names_.size() != d) throw Error(ErrorCode::ShapeMismatch, "algebra: name count");

    left_.reserve(d);
    right_.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      Matrix l(field_, d, d), r(field_, d, d);
      for (std::size_t j = 0; j < d; ++j) {
        l.set_column(j, structconst_[i][j]);
        r.set_column(j, structconst_[j][i]);
      }
      left_.push_back(std::move(l));
      right_.push_back(std::move(r));
    }
  }

  const FiniteGroup& group() const { return group_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return degree_.size(); }
  GroupElt degree(std::size_t i) const { return degree_.at(i); }
  const std::vector<GroupElt>& degrees() const { return degree_; }
  const std::vector<std::vector<Vector>>& structconst() const { return structconst_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  const Vector& product(std::size_t i, std::size_t j) const { return structconst_[i][j]; }
  const Vector& unit() const { return unit_; }
  Vector basis_vector(std::size_t i) const { return unit_vector(field_, dim(), i); }
  Vector zero() const { return zero_vector(field_, dim()); }

  /// Left multiplication by e_i: column j holds e_i e_j.
  const Matrix& left_mult(std::size_t i) const { return left_[i]; }
  /// Right multiplication by e_i: column j holds e_j e_i.
  const Matrix& right_mult(std::size_t i) const { return right_[i]; }

  Matrix left_mult(const Vector& a) const { return combine(left_, a); }
  Matrix right_mult(const Vector& a) const { return combine(right_, a); }

  Vector multiply(const Vector& x, const Vector& y) const { return left_mult(x) * y; }

  std::vector<std::size_t> basis_of_degree(GroupElt g) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degree_[i] == g) out.push_back(i);
    return out;
  }

  /// Support of v is contained in the degree-g basis vectors.
  bool lies_in_degree(const Vector& v, GroupElt g) const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!v[i].is_zero() && degree_[i] != g) return false;
    return true;
  }

  std::vector<std::size_t> component_dims() const {
    std::vector<std::size_t> dims(group_.order(), 0);
    for (auto g : degree_) ++dims[g.index];
    return dims;
  }

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
    return a.group_ == b.group_ && a.field_ == b.field_ && a.degree_ == b.degree_ && a.structconst_ == b.structconst_ &&
           a.unit_ == b.unit_;
  }

 private:
  Matrix combine(const std::vector<Matrix>& mats, const Vector& a) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (!a[i].is_zero()) m += a[i] * mats[i];
    return m;
  }

  FiniteGroup group_;
  Field field_;
  std::vector<GroupElt> degree_;
  std::vector<std::vector<Vector>> structconst_;
  Vector unit_;
  std::vector<std::string> names_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || (a && b && *a == *b); }

inline json degree_json(const FiniteGroup& G, GroupElt g) { return G.label(g); }

/// Axioms of a G-graded algebra, checked on basis triples.
inline ValidationReport check_graded_algebra(const GradedAlgebra& A) {
  ValidationReport report;
  const std::size_t d = A.dim();
  const auto& G = A.group();

  std::optional<json> assoc;
  for (std::size_t i = 0; i < d && !assoc; ++i)
    for (std::size_t j = 0; j < d && !assoc; ++j) {
      for (std::size_t k = 0; k < d && !assoc; ++k) {
        const Vector lhs = A.multiply(A.product(i, j), A.basis_vector(k));
        const Vector rhs = A.multiply(A.basis_vector(i), A.product(j, k));
        if (!(lhs == rhs)) assoc = json{{"triple", {A.name(i), A.name(j), A.name(k)}}, {"indices", {i, j, k}}};
      }
    }
  report.record("Associativity", "(xy)z = x(yz)", assoc);

  std::optional<json> unit;
  for (std::size_t i = 0; i < d && !unit; ++i) {
    const Vector e = A.basis_vector(i);
    if (!(A.multiply(A.unit(), e) == e) || !(A.multiply(e, A.unit()) == e)) unit = json{{"element", A.name(i)}, {"index", i}};
  }
  report.record("Unit", "1x = x = x1", unit);

  std::optional<json> unit_degree;
  if (!A.lies_in_degree(A.unit(), G.identity())) unit_degree = json{{"unit_support_outside", "degree 1"}};
  report.record("UnitDegree", "1 in A_1", unit_degree);

  std::optional<json> grading;
  for (std::size_t i = 0; i < d && !grading; ++i)
    for (std::size_t j = 0; j < d && !grading; ++j) {
      const GroupElt target = G.mul(A.degree(i), A.degree(j));
      if (!A.lies_in_degree(A.product(i, j), target)) {
        grading = json{{"pair", {A.name(i), A.name(j)}},
                       {"degrees", {G.label(A.degree(i)), G.label(A.degree(j))}},
                       {"expected_degree", G.label(target)}};
      }
    }
  report.record("Grading", "A_g A_h in A_gh", grading);
  return report;
}

/// A graded subalgebra carried as its own GradedAlgebra plus the inclusion
/// (columns: sub-basis coordinates in the ambient basis).
struct SubalgebraEmbedding {
  AlgebraPtr ambient;
  AlgebraPtr sub;
  Matrix inclusion;
  SpanCoordinates coords;

  Vector embed(const Vector& x) const { return inclusion * x; }
  std::optional<Vector> to_sub(const Vector& ambient_vec) const { return coords.coordinates(ambient_vec); }
};

/// Builds the subalgebra spanned by homogeneous ambient vectors `basis`
/// (degrees given). Throws NotClosed if the span is not a unital subalgebra.
inline SubalgebraEmbedding make_subalgebra(const AlgebraPtr& A, const std::vector<Vector>& basis, const std::vector<GroupElt>& degrees,
                                           std::vector<std::string> names = {}) {
  const Field& f = A->field();
  SpanCoordinates coords(f, A->dim(), basis);
  const std::size_t k = basis.size();
  std::vector<std::vector<Vector>> sc(k, std::vector<Vector>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sc[i][j] = coords.coordinates_or_throw(A->multiply(basis[i], basis[j]), "subalgebra product");
  Vector unit = coords.coordinates_or_throw(A->unit(), "subalgebra unit");
  auto sub = std::make_shared<const GradedAlgebra>(A->group(), f, degrees, std::move(sc), std::move(unit), std::move(names));
  return SubalgebraEmbedding{A, sub, Matrix::from_columns(f, A->dim(), basis), std::move(coords)};
}

/// B = A_1 with the inherited basis.
inline SubalgebraEmbedding identity_component(const AlgebraPtr& A) {
  std::vector<Vector> basis;
  std::vector<std::string> names;
  for (auto i : A->basis_of_degree(A->group().identity())) {
    basis.push_back(A->basis_vector(i));
    names.push_back(A->name(i));
  }
  return make_subalgebra(A, basis, std::vector<GroupElt>(basis.size(), A->group().identity()), names);
}

/// Homogeneous units u_g ∈ A_g with their inverses; u_1 = 1.
struct CrossedProductData {
  AlgebraPtr algebra;
  std::vector<Vector> units;
  std::vector<Vector> unit_inverses;

  const Vector& unit(GroupElt g) const { return units.at(g.index); }
  const Vector& unit_inverse(GroupElt g) const { return unit_inverses.at(g.index); }

  /// u_g x u_g⁻¹
  Vector conjugate(GroupElt g, const Vector& x) const {
    return algebra->multiply(algebra->multiply(unit(g), x), unit_inverse(g));
  }
};

inline std::optional<Vector> inverse_element(const GradedAlgebra& A, const Vector& u) {
  return solve(A.left_mult(u), A.unit());
}

inline ValidationReport check_crossed_product(const CrossedProductData& cp) {
  ValidationReport report;
  const auto& A = *cp.algebra;
  const auto& G = A.group();
  std::optional<json> degree, invert;
  for (auto g : G.elements()) {
    if (!degree && (!A.lies_in_degree(cp.unit(g), g) || is_zero(cp.unit(g)))) degree = json{{"g", G.label(g)}};
    if (!invert && (!(A.multiply(cp.unit(g), cp.unit_inverse(g)) == A.unit()) || !(A.multiply(cp.unit_inverse(g), cp.unit(g)) == A.unit())))
      invert = json{{"g", G.label(g)}};
  }
  report.record("UnitDegree", "u_g in A_g", degree);
  report.record("Invertible", "u_g u_g^-1 = u_g^-1 u_g = 1", invert);
  report.record("IdentityUnit", "u_1 = 1", cp.unit(G.identity()) == A.unit() ? std::nullopt : std::optional<json>(json{{"u_1", "not 1"}}));
  return report;
}

/// Wraps explicit unit choices; throws NotCrossedProduct if any is not an
/// invertible element of the right degree.
inline CrossedProductData make_crossed_product(const AlgebraPtr& A, std::vector<Vector> units) {
  if (units.size() != A->group().order()) throw Error(ErrorCode::NotCrossedProduct, "one unit per group element required");
  CrossedProductData cp{A, std::move(units), {}};
  for (const auto& u : cp.units) {
    auto inv = inverse_element(*A, u);
    if (!inv) throw Error(ErrorCode::NotCrossedProduct, "chosen u_g is not invertible");
    cp.unit_inverses.push_back(std::move(*inv));
  }
  if (!check_crossed_product(cp).passed()) throw Error(ErrorCode::NotCrossedProduct, "unit choice violates crossed-product axioms");
  return cp;
}

/// For each g, an invertible element of A_g found by generic_invertible_element
/// over the left-multiplication matrices of the degree-g basis; nullopt if
/// some component has none.
inline std::optional<CrossedProductData> find_crossed_product(const AlgebraPtr& A) {
  const auto& G = A->group();
  std::vector<Vector> units;
  for (auto g : G.elements()) {
    if (g == G.identity()) {
      units.push_back(A->unit());
      continue;
    }
    const auto idx = A->basis_of_degree(g);
    std::vector<Matrix> mats;
    for (auto i : idx) mats.push_back(A->left_mult(i));
    auto c = invertible_combination(A->field(), A->dim(), mats);
    if (!c || idx.empty()) return std::nullopt;
    Vector u = A->zero();
    for (std::size_t k = 0; k < idx.size(); ++k) u[idx[k]] = (*c)[k];
    units.push_back(std::move(u));
  }
  return make_crossed_product(A, std::move(units));
}

/// C_A(S): for each degree h, the homogeneous a ∈ A_h with a s = s a for all
/// s in S, solved as a kernel; degree labels are inherited.
inline SubalgebraEmbedding centralizer(const AlgebraPtr& A, const SubalgebraEmbedding& S) {
  const Field& f = A->field();
  const std::size_t d = A->dim();
  std::vector<Vector> s_basis;
  for (std::size_t j = 0; j < S.inclusion.cols(); ++j) s_basis.push_back(S.inclusion.column(j));
  std::vector<Vector> basis;
  std::vector<GroupElt> degrees;
  for (auto h : A->group().elements()) {
    const auto idx = A->basis_of_degree(h);
    if (idx.empty()) continue;
    // rows: (s_j, coordinate), cols: candidate basis vectors of degree h
    Matrix sys(f, s_basis.size() * d, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const Vector e = A->basis_vector(idx[c]);
      for (std::size_t j = 0; j < s_basis.size(); ++j) {
        const Vector comm = A->multiply(e, s_basis[j]) - A->multiply(s_basis[j], e);
        for (std::size_t r = 0; r < d; ++r) sys(j * d + r, c) = comm[r];
      }
    }
    for (const auto& k : kernel_vectors(sys)) {
      Vector v = A->zero();
      for (std::size_t c = 0; c < idx.size(); ++c) v[idx[c]] = k[c];
      basis.push_back(std::move(v));
      degrees.push_back(h);
    }
  }
  return make_subalgebra(A, basis, degrees);
}

/// The embedding of an algebra into itself.
inline SubalgebraEmbedding whole_algebra(const AlgebraPtr& A) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < A->dim(); ++i) basis.push_back(A->basis_vector(i));
  return make_subalgebra(A, basis, A->degrees(), A->names());
}

/// Z(B) as a subalgebra of B.
inline SubalgebraEmbedding center_of(const AlgebraPtr& B) { return centralizer(B, whole_algebra(B)); }

/// Graded algebra with a G-action: one automorphism matrix per group element.
struct GActedAlgebra {
  AlgebraPtr algebra;
  std::vector<Matrix> action;

  const Matrix& act(GroupElt g) const { return action.at(g.index); }
  Vector act(GroupElt g, const Vector& c) const { return act(g) * c; }
};

/// Linear map between algebras; properties are checked, not assumed.
struct AlgebraHom {
  AlgebraPtr source;
  AlgebraPtr target;
  Matrix matrix;

  Vector operator()(const Vector& x) const { return matrix * x; }
};

inline ValidationReport check_algebra_hom(const AlgebraHom& h, bool graded) {
  ValidationReport report;
  const auto& S = *h.source;
  const auto& T = *h.target;
  report.record("Unital", "h(1) = 1", h(S.unit()) == T.unit() ? std::nullopt : std::optional<json>(json{{"h(1)", "differs from 1"}}));
  std::optional<json> mult;
  for (std::size_t i = 0; i < S.dim() && !mult; ++i)
    for (std::size_t j = 0; j < S.dim() && !mult; ++j)
      if (!(h(S.product(i, j)) == T.multiply(h(S.basis_vector(i)), h(S.basis_vector(j)))))
        mult = json{{"pair", {S.name(i), S.name(j)}}};
  report.record("Multiplicative", "h(xy) = h(x)h(y)", mult);
  if (graded) {
    std::optional<json> grad;
    for (std::size_t i = 0; i < S.dim() && !grad; ++i)
      if (!T.lies_in_degree(h(S.basis_vector(i)), S.degree(i))) grad = json{{"element", S.name(i)}, {"degree", S.group().label(S.degree(i))}};
    report.record("Graded", "h(A_g) in A'_g", grad);
  }
  return report;
}

/// Miyashita action on C = C_A(B): g·c = u_g c u_g⁻¹, read back in C's basis.
inline GActedAlgebra miyashita_action(const CrossedProductData& cp, const SubalgebraEmbedding& C) {
  const auto& G = cp.algebra->group();
  const std::size_t k = C.sub->dim();
  GActedAlgebra out{C.sub, {}};
  for (auto g : G.elements()) {
    Matrix m(C.sub->field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto coords = C.to_sub(cp.conjugate(g, C.inclusion.column(j)));
      if (!coords) throw Error(ErrorCode::ActionLeavesCentralizer, "u_g c u_g^-1 left the centralizer for g = " + G.label(g));
      m.set_column(j, *coords);
    }
    out.action.push_back(std::move(m));
  }
  return out;
}

inline GActedAlgebra miyashita_action(const AlgebraPtr& A, const SubalgebraEmbedding& B, const CrossedProductData& cp) {
  if (!same_algebra(A, cp.algebra) || !same_algebra(A, B.ambient))
    throw Error(ErrorCode::PreconditionViolation, "miyashita_action: algebras differ");
  return miyashita_action(cp, centralizer(A, B));
}

/// Group algebra k[H] graded through a homomorphism H → G given as a list of images.
inline AlgebraPtr graded_group_algebra(const Field& f, const FiniteGroup& H, const FiniteGroup& G, const std::vector<GroupElt>& grading) {
  const std::size_t n = H.order();
  std::vector<std::vector<Vector>> sc(n, std::vector<Vector>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) sc[i][j] = unit_vector(f, n, H.mul({i}, {j}).index);
  return std::make_shared<const GradedAlgebra>(G, f, grading, std::move(sc), unit_vector(f, n, 0), H.labels());
}

}  // namespace gmorita
