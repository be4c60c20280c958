#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmorita/graded_module.hpp"

namespace gmorita {

/// Automorphism, composition and degree laws of a G-action on a graded algebra.
inline ValidationReport check_g_acted_algebra(const GActedAlgebra& C) {
  ValidationReport report;
  const auto& A = *C.algebra;
  const auto& G = A.group();
  report.merge(check_graded_algebra(A), "Algebra.");
  if (C.action.size() != G.order()) {
    report.fail("ActionShape", "one automorphism per group element", json{{"matrices", C.action.size()}, {"order", G.order()}});
    return report;
  }

  std::optional<json> automorphism;
  for (auto g : G.elements()) {
    const Matrix& m = C.act(g);
    if (automorphism) break;
    if (!(m * A.unit() == A.unit())) {
      automorphism = json{{"g", G.label(g)}, {"law", "unit not fixed"}};
    } else if (!is_invertible(m)) {
      automorphism = json{{"g", G.label(g)}, {"law", "not invertible"}};
    } else {
      for (std::size_t i = 0; i < A.dim() && !automorphism; ++i)
        for (std::size_t j = 0; j < A.dim() && !automorphism; ++j)
          if (!(m * A.product(i, j) == A.multiply(m.column(i), m.column(j))))
            automorphism = json{{"g", G.label(g)}, {"pair", {A.name(i), A.name(j)}}, {"law", "not multiplicative"}};
    }
  }
  report.record("Automorphism", "g(cd) = g(c) g(d), g(1) = 1, g bijective", automorphism);

  const bool identity_ok = C.act(G.identity()) == Matrix::identity(A.field(), A.dim());
  report.record("IdentityActsTrivially", "1c = c", identity_ok ? std::nullopt : std::optional<json>(json{{"g", G.label(G.identity())}}));

  std::optional<json> composition;
  for (auto g : G.elements())
    for (auto h : G.elements())
      if (!composition && !(C.act(g) * C.act(h) == C.act(G.mul(g, h)))) composition = json{{"g", G.label(g)}, {"h", G.label(h)}};
  report.record("Composition", "g(h c) = (gh) c", composition);

  std::optional<json> degree;
  for (auto g : G.elements()) {
    for (std::size_t i = 0; i < A.dim() && !degree; ++i) {
      const GroupElt target = conjugate(G, g, A.degree(i));
      if (!A.lies_in_degree(C.act(g).column(i), target))
        degree = json{{"g", G.label(g)}, {"element", A.name(i)}, {"degree", G.label(A.degree(i))}, {"expected_degree", G.label(target)}};
    }
  }
  report.record("DegreeLaw", "g(C_h) in C_{ghg^-1}", degree);
  return report;
}

/// A crossed product A with ζ: C → A; the axioms are checked, not assumed.
struct AlgebraOverC {
  GActedAlgebra C;
  AlgebraPtr A;
  CrossedProductData cp;
  Matrix zeta;  // dim A × dim C

  Vector apply(const Vector& c) const { return zeta * c; }
};

inline ValidationReport check_algebra_over_c(const AlgebraOverC& X) {
  ValidationReport report;
  const auto& C = *X.C.algebra;
  const auto& A = *X.A;
  const auto& G = A.group();
  if (X.zeta.rows() != A.dim() || X.zeta.cols() != C.dim()) throw Error(ErrorCode::ShapeMismatch, "zeta has wrong shape");

  report.record("Unital", "zeta(1) = 1", X.apply(C.unit()) == A.unit() ? std::nullopt : std::optional<json>(json{{"zeta(1)", "differs from 1"}}));

  std::optional<json> mult;
  for (std::size_t i = 0; i < C.dim() && !mult; ++i)
    for (std::size_t j = 0; j < C.dim() && !mult; ++j)
      if (!(X.apply(C.product(i, j)) == A.multiply(X.zeta.column(i), X.zeta.column(j)))) mult = json{{"pair", {C.name(i), C.name(j)}}};
  report.record("Multiplicative", "zeta(cd) = zeta(c) zeta(d)", mult);

  const auto B = identity_component(X.A);
  std::optional<json> central;
  for (std::size_t i = 0; i < C.dim() && !central; ++i)
    for (std::size_t b = 0; b < B.sub->dim() && !central; ++b) {
      const Vector z = X.zeta.column(i);
      const Vector bb = B.inclusion.column(b);
      if (!(A.multiply(z, bb) == A.multiply(bb, z))) central = json{{"c", C.name(i)}, {"b", B.sub->name(b)}};
    }
  report.record("LandsInCentralizer", "zeta(c) b = b zeta(c)", central);

  std::optional<json> graded;
  for (std::size_t i = 0; i < C.dim() && !graded; ++i)
    if (!A.lies_in_degree(X.zeta.column(i), C.degree(i))) graded = json{{"c", C.name(i)}, {"degree", G.label(C.degree(i))}};
  report.record("Graded", "zeta(C_h) in C_A(B)_h", graded);

  std::optional<json> equivariant;
  for (auto g : G.elements())
    for (std::size_t i = 0; i < C.dim() && !equivariant; ++i)
      if (!(X.apply(X.C.act(g).column(i)) == X.cp.conjugate(g, X.zeta.column(i))))
        equivariant = json{{"g", G.label(g)}, {"c", C.name(i)}, {"degree", G.label(C.degree(i))}};
  report.record("Equivariant", "zeta(gc) = u_g zeta(c) u_g^-1", equivariant);
  return report;
}

/// C = C_A(B) with the Miyashita action and ζ the inclusion.
inline AlgebraOverC canonical_over_c(const AlgebraPtr& A, const CrossedProductData& cp) {
  const auto C = centralizer(A, identity_component(A));
  return AlgebraOverC{miyashita_action(cp, C), A, cp, C.inclusion};
}

inline AlgebraOverC canonical_over_c(const AlgebraPtr& A) {
  auto cp = find_crossed_product(A);
  if (!cp) throw Error(ErrorCode::NotCrossedProduct, "algebra has no homogeneous units");
  return canonical_over_c(A, *cp);
}

/// Restriction of a G-acted algebra to its identity component, with inclusion.
inline std::pair<GActedAlgebra, Matrix> identity_part(const GActedAlgebra& C) {
  const auto Z = identity_component(C.algebra);
  GActedAlgebra out{Z.sub, {}};
  for (const auto& m : C.action) {
    Matrix r(C.algebra->field(), Z.sub->dim(), Z.sub->dim());
    for (std::size_t j = 0; j < Z.sub->dim(); ++j) r.set_column(j, Z.coords.coordinates_or_throw(m * Z.inclusion.column(j), "identity part"));
    out.action.push_back(std::move(r));
  }
  return {std::move(out), Z.inclusion};
}

/// C replaced by its identity component C_1 = Z(B).
inline AlgebraOverC restrict_to_identity(const AlgebraOverC& X) {
  auto [Z, incl] = identity_part(X.C);
  return AlgebraOverC{std::move(Z), X.A, X.cp, X.zeta * incl};
}

/// C = ground field in degree 1 with trivial action; ζ is the unit map.
inline AlgebraOverC ground_over_c(const AlgebraPtr& A, const CrossedProductData& cp) {
  const Field& f = A->field();
  auto k = std::make_shared<const GradedAlgebra>(A->group(), f, std::vector<GroupElt>{A->group().identity()},
                                                 std::vector<std::vector<Vector>>{{unit_vector(f, 1, 0)}}, unit_vector(f, 1, 0),
                                                 std::vector<std::string>{"1"});
  GActedAlgebra C{k, std::vector<Matrix>(A->group().order(), Matrix::identity(f, 1))};
  return AlgebraOverC{std::move(C), A, cp, Matrix::column_matrix(f, A->unit())};
}

/// The A-linear endomorphism of P that restricts to p ↦ c·p on P_1, as
/// coordinates over the homogeneous basis of End_A(P). nullopt if no such
/// extension exists.
inline std::optional<Vector> theta_extension(const GradedModule& P, const HomSpace& end, const Vector& c) {
  const Field& f = P.field();
  const auto one = P.basis_of_degree(P.group().identity());
  const Matrix Lc = P.left_action(c);
  Matrix sys(f, one.size() * P.dim(), end.dim());
  Vector rhs(one.size() * P.dim(), f.zero());
  for (std::size_t k = 0; k < one.size(); ++k)
    for (std::size_t r = 0; r < P.dim(); ++r) {
      for (std::size_t a = 0; a < end.dim(); ++a) sys(k * P.dim() + r, a) = end.basis[a](r, one[k]);
      rhs[k * P.dim() + r] = Lc(r, one[k]);
    }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  // the extension must be unique: P is generated by P_1
  if (rank(sys) != end.dim()) throw Error(ErrorCode::PreconditionViolation, "theta: P is not generated by its identity component");
  return sol;
}

/// θ: C_A(B) → End_A(P)^op together with everything needed to check it.
struct ThetaData {
  AlgebraPtr A;
  CrossedProductData cp;
  SubalgebraEmbedding centralizer_a;  // C_A(B)
  GActedAlgebra centralizer_action;   // Miyashita on C_A(B)
  EndOp endop;                        // A' and P as (A, A')-bimodule
  CrossedProductData cp_prime;        // units of A'
  SubalgebraEmbedding centralizer_ap; // C_{A'}(B')
  GActedAlgebra centralizer_ap_action;
  AlgebraHom theta;                   // C_A(B) → A'
};

inline ValidationReport check_theta(const ThetaData& T) {
  ValidationReport report = check_algebra_hom(T.theta, true);
  const auto& C = *T.centralizer_a.sub;
  const auto& G = C.group();
  std::optional<json> lands;
  for (std::size_t i = 0; i < C.dim() && !lands; ++i)
    if (!T.centralizer_ap.to_sub(T.theta.matrix.column(i))) lands = json{{"c", C.name(i)}, {"degree", G.label(C.degree(i))}};
  report.record("LandsInCentralizer", "theta(c) in C_A'(B')", lands);
  std::optional<json> equiv;
  for (auto g : G.elements())
    for (std::size_t i = 0; i < C.dim() && !equiv; ++i) {
      const Vector lhs = T.theta(T.centralizer_action.act(g).column(i));
      const Vector rhs = T.cp_prime.conjugate(g, T.theta.matrix.column(i));
      if (!(lhs == rhs)) equiv = json{{"g", G.label(g)}, {"c", C.name(i)}, {"degree", G.label(C.degree(i))}};
    }
  report.record("Equivariant", "theta(gc) = u'_g theta(c) u'_g^-1", equiv);
  return report;
}

/// θ(c) is the A-linear extension of left multiplication by c on P_1.
/// Requires P to be G-invariant so that End_A(P)^op is a crossed product.
inline ThetaData canonical_theta(const AlgebraPtr& A, const CrossedProductData& cp, const GradedModule& P) {
  if (!check_crossed_product(cp).passed()) throw Error(ErrorCode::NotCrossedProduct, "theta: invalid crossed-product data");
  if (!is_g_invariant(P)) throw Error(ErrorCode::NotGInvariant, "theta: P is not G-invariant");
  auto C = centralizer(A, identity_component(A));
  auto action = miyashita_action(cp, C);
  EndOp E = end_op_algebra(P);
  auto cpp = find_crossed_product(E.algebra);
  if (!cpp) throw Error(ErrorCode::NotCrossedProduct, "theta: End_A(P)^op has no homogeneous units");
  auto Cp = centralizer(E.algebra, identity_component(E.algebra));
  auto action_p = miyashita_action(*cpp, Cp);
  Matrix th(A->field(), E.algebra->dim(), C.sub->dim());
  for (std::size_t i = 0; i < C.sub->dim(); ++i) {
    auto col = theta_extension(E.bimodule, E.homs, C.inclusion.column(i));
    if (!col) throw Error(ErrorCode::PreconditionViolation, "theta: left multiplication on P_1 does not extend");
    th.set_column(i, *col);
  }
  AlgebraHom theta{C.sub, E.algebra, std::move(th)};
  ThetaData T{A, cp, std::move(C), std::move(action), std::move(E), std::move(*cpp), std::move(Cp), std::move(action_p), std::move(theta)};
  const auto report = check_theta(T);
  if (!report.passed()) throw Error(ErrorCode::PreconditionViolation, "theta: " + report.failures().front() + " fails");
  return T;
}

inline ThetaData canonical_theta(const AlgebraOverC& X, const GradedModule& P) { return canonical_theta(X.A, X.cp, P); }

/// A' = End_A(P)^op over C with ζ' = θ∘ζ.
inline AlgebraOverC make_algebra_over_c_on_endos(const AlgebraOverC& X, const ThetaData& T) {
  Matrix zp(X.A->field(), T.endop.algebra->dim(), X.C.algebra->dim());
  for (std::size_t i = 0; i < X.C.algebra->dim(); ++i) {
    auto col = theta_extension(T.endop.bimodule, T.endop.homs, X.zeta.column(i));
    if (!col) throw Error(ErrorCode::PreconditionViolation, "zeta': extension failed");
    zp.set_column(i, *col);
  }
  return AlgebraOverC{X.C, T.endop.algebra, T.cp_prime, std::move(zp)};
}

inline AlgebraOverC make_algebra_over_c_on_endos(const AlgebraOverC& X, const GradedModule& P) {
  return make_algebra_over_c_on_endos(X, canonical_theta(X, P));
}

/// An (A, A')-bimodule where A and A' are both algebras over the same C.
struct BimoduleOverC {
  AlgebraOverC left;
  AlgebraOverC right;
  GradedModule M;
};

namespace detail {

inline bool same_c(const GActedAlgebra& a, const GActedAlgebra& b) { return same_algebra(a.algebra, b.algebra) && a.action == b.action; }

// m·ζ_R(c) = ζ_L(g c)·m on homogeneous basis m of degree g; degree-1 only when `identity_only`.
inline std::optional<json> condition_three_witness(const BimoduleOverC& X, bool identity_only) {
  const auto& M = X.M;
  const auto& G = M.group();
  const auto& C = *X.left.C.algebra;
  for (std::size_t j = 0; j < C.dim(); ++j) {
    const Matrix right = M.right_action(X.right.zeta.column(j));
    for (auto g : G.elements()) {
      if (identity_only && g != G.identity()) continue;
      const auto idx = M.basis_of_degree(g);
      if (idx.empty()) continue;
      const Matrix left = M.left_action(X.left.apply(X.left.C.act(g).column(j)));
      for (auto m : idx)
        if (!(right.column(m) == left.column(m)))
          return json{{"m", m}, {"m_degree", G.label(g)}, {"c", C.name(j)}, {"c_degree", G.label(C.degree(j))}};
    }
  }
  return std::nullopt;
}

inline void check_bimodule_shape(ValidationReport& report, const BimoduleOverC& X) {
  const bool ok = X.M.is_bimodule() && same_algebra(X.M.left_algebra(), X.left.A) && same_algebra(X.M.right_algebra(), X.right.A);
  report.record("Algebras", "M is an (A, A')-bimodule", ok ? std::nullopt : std::optional<json>(json{{"mismatch", "bimodule algebras"}}));
  report.record("SameC", "A and A' are over the same C",
                same_c(X.left.C, X.right.C) ? std::nullopt : std::optional<json>(json{{"mismatch", "acted algebras differ"}}));
}

}  // namespace detail

/// Graded bimodule axioms plus m_g·c = (g c)·m_g on homogeneous basis pairs.
inline ValidationReport check_bimodule_over_c(const BimoduleOverC& X) {
  ValidationReport report;
  detail::check_bimodule_shape(report, X);
  if (!report.passed()) return report;
  report.merge(check_graded_module(X.M), "Bimodule.");
  report.record("Condition3", "m_g c = (g c) m_g", detail::condition_three_witness(X, false));
  return report;
}

/// m·c = c·m on the degree-1 component only.
inline ValidationReport condition_three_prime(const BimoduleOverC& X) {
  ValidationReport report;
  detail::check_bimodule_shape(report, X);
  if (!report.passed()) return report;
  report.record("Condition3Prime", "m c = c m for m in M_1", detail::condition_three_witness(X, true));
  return report;
}

/// Endomorphism of a graded left A-module X extending p ↦ ζ(c)·p on X_1.
class ThetaOnModule {
 public:
  ThetaOnModule(const AlgebraOverC& over, GradedModule X)
      : over_(over), X_(X.as_left()), end_(hom_graded(X_, X_, HomKind::Left)) {}

  const GradedModule& module() const { return X_; }
  const HomSpace& end() const { return end_; }

  Matrix operator()(const Vector& c) const {
    auto coords = theta_extension(X_, end_, over_.apply(c));
    if (!coords) throw Error(ErrorCode::PreconditionViolation, "theta on module: no extension");
    return end_.element(*coords);
  }

 private:
  AlgebraOverC over_;
  GradedModule X_;
  HomSpace end_;
};

}  // namespace gmorita
