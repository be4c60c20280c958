#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gmorita/over_c.hpp"

namespace gmorita {

/// (A, A', M, M', f, g) with M an (A, A')-bimodule and M' an (A', A)-bimodule.
/// f[i][j] = f(m_i, m'_j) in A-coordinates, g[j][i] = g(m'_j, m_i) in A'.
struct MoritaContext {
  AlgebraPtr A;
  AlgebraPtr Aprime;
  std::optional<AlgebraOverC> over_A;
  std::optional<AlgebraOverC> over_Aprime;
  GradedModule M;
  GradedModule Mprime;
  std::vector<std::vector<Vector>> f;
  std::vector<std::vector<Vector>> g;

  bool is_over_c() const { return over_A.has_value() && over_Aprime.has_value(); }

  Vector pair_f(const Vector& m, const Vector& mp) const { return pair(f, m, mp, A->zero()); }
  Vector pair_g(const Vector& mp, const Vector& m) const { return pair(g, mp, m, Aprime->zero()); }

 private:
  static Vector pair(const std::vector<std::vector<Vector>>& t, const Vector& x, const Vector& y, Vector acc) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!y[j].is_zero()) acc = acc + (x[i] * y[j]) * t[i][j];
    }
    return acc;
  }
};

namespace detail {

inline std::optional<json> first_mismatch(std::size_t n1, std::size_t n2, std::size_t n3,
                                          const std::function<bool(std::size_t, std::size_t, std::size_t)>& holds,
                                          const std::function<json(std::size_t, std::size_t, std::size_t)>& witness) {
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      for (std::size_t c = 0; c < n3; ++c)
        if (!holds(a, b, c)) return witness(a, b, c);
  return std::nullopt;
}

}  // namespace detail

/// Balancedness, bimodule-map and grading properties of f and g, both
/// associativity laws, and the over-C conditions when present.
inline ValidationReport check_context(const MoritaContext& ctx) {
  ValidationReport report;
  const auto& M = ctx.M;
  const auto& Mp = ctx.Mprime;
  const bool shape_ok = M.is_bimodule() && Mp.is_bimodule() && same_algebra(M.left_algebra(), ctx.A) &&
                        same_algebra(M.right_algebra(), ctx.Aprime) && same_algebra(Mp.left_algebra(), ctx.Aprime) &&
                        same_algebra(Mp.right_algebra(), ctx.A) && ctx.f.size() == M.dim() && ctx.g.size() == Mp.dim();
  report.record("Shape", "M is (A,A'), M' is (A',A), f and g sized to match", shape_ok ? std::nullopt : std::optional<json>(json{{"shape", "mismatch"}}));
  if (!shape_ok) return report;

  const auto& A = *ctx.A;
  const auto& Ap = *ctx.Aprime;
  const auto& G = A.group();
  const std::size_t m = M.dim(), mp = Mp.dim();
  auto eM = [&](std::size_t i) { return unit_vector(M.field(), m, i); };
  auto eMp = [&](std::size_t j) { return unit_vector(M.field(), mp, j); };
  auto deg = [&](const GradedModule& X, std::size_t i) { return G.label(X.degree(i)); };

  report.merge(check_graded_module(M), "M.");
  report.merge(check_graded_module(Mp), "Mprime.");

  report.record("BalancedF", "f(m a', m') = f(m, a' m')",
                detail::first_mismatch(
                    m, Ap.dim(), mp,
                    [&](auto i, auto a, auto j) { return ctx.pair_f(M.right().matrices[a].column(i), eMp(j)) == ctx.pair_f(eM(i), Mp.left().matrices[a].column(j)); },
                    [&](auto i, auto a, auto j) { return json{{"m", i}, {"a'", Ap.name(a)}, {"m'", j}}; }));
  report.record("BalancedG", "g(m' a, m) = g(m', a m)",
                detail::first_mismatch(
                    mp, A.dim(), m,
                    [&](auto j, auto a, auto i) { return ctx.pair_g(Mp.right().matrices[a].column(j), eM(i)) == ctx.pair_g(eMp(j), M.left().matrices[a].column(i)); },
                    [&](auto j, auto a, auto i) { return json{{"m'", j}, {"a", A.name(a)}, {"m", i}}; }));

  report.record("BimoduleMapF", "f(a m, m' b) = a f(m, m') b",
                detail::first_mismatch(
                    m, A.dim(), mp,
                    [&](auto i, auto a, auto j) {
                      const Vector e = A.basis_vector(a);
                      return ctx.pair_f(M.left().matrices[a].column(i), eMp(j)) == A.multiply(e, ctx.f[i][j]) &&
                             ctx.pair_f(eM(i), Mp.right().matrices[a].column(j)) == A.multiply(ctx.f[i][j], e);
                    },
                    [&](auto i, auto a, auto j) { return json{{"m", i}, {"a", A.name(a)}, {"m'", j}}; }));
  report.record("BimoduleMapG", "g(a' m', m b') = a' g(m', m) b'",
                detail::first_mismatch(
                    mp, Ap.dim(), m,
                    [&](auto j, auto a, auto i) {
                      const Vector e = Ap.basis_vector(a);
                      return ctx.pair_g(Mp.left().matrices[a].column(j), eM(i)) == Ap.multiply(e, ctx.g[j][i]) &&
                             ctx.pair_g(eMp(j), M.right().matrices[a].column(i)) == Ap.multiply(ctx.g[j][i], e);
                    },
                    [&](auto j, auto a, auto i) { return json{{"m'", j}, {"a'", Ap.name(a)}, {"m", i}}; }));

  report.record("GradedF", "f(M_x, M'_y) in A_xy",
                detail::first_mismatch(
                    m, mp, 1, [&](auto i, auto j, auto) { return A.lies_in_degree(ctx.f[i][j], G.mul(M.degree(i), Mp.degree(j))); },
                    [&](auto i, auto j, auto) { return json{{"m", i}, {"m_degree", deg(M, i)}, {"m'", j}, {"m'_degree", deg(Mp, j)}}; }));
  report.record("GradedG", "g(M'_x, M_y) in A'_xy",
                detail::first_mismatch(
                    mp, m, 1, [&](auto j, auto i, auto) { return Ap.lies_in_degree(ctx.g[j][i], G.mul(Mp.degree(j), M.degree(i))); },
                    [&](auto j, auto i, auto) { return json{{"m'", j}, {"m'_degree", deg(Mp, j)}, {"m", i}, {"m_degree", deg(M, i)}}; }));

  std::vector<Matrix> LfM, RgM, LgMp, RfMp;  // cached action matrices of pairing values
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < mp; ++j) {
      LfM.push_back(M.left_action(ctx.f[i][j]));
      RfMp.push_back(Mp.right_action(ctx.f[i][j]));
    }
  for (std::size_t j = 0; j < mp; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      RgM.push_back(M.right_action(ctx.g[j][i]));
      LgMp.push_back(Mp.left_action(ctx.g[j][i]));
    }
  report.record("AssociativityM", "(m m') n = m (m' n)",
                detail::first_mismatch(
                    m, mp, m, [&](auto i, auto j, auto k) { return LfM[i * mp + j].column(k) == RgM[j * m + k].column(i); },
                    [&](auto i, auto j, auto k) {
                      return json{{"m", i}, {"m_degree", deg(M, i)}, {"m'", j}, {"m'_degree", deg(Mp, j)}, {"n", k}, {"n_degree", deg(M, k)}};
                    }));
  report.record("AssociativityMprime", "(m' m) n' = m' (m n')",
                detail::first_mismatch(
                    mp, m, mp, [&](auto j, auto i, auto k) { return LgMp[j * m + i].column(k) == RfMp[i * mp + k].column(j); },
                    [&](auto j, auto i, auto k) {
                      return json{{"m'", j}, {"m'_degree", deg(Mp, j)}, {"m", i}, {"m_degree", deg(M, i)}, {"n'", k}, {"n'_degree", deg(Mp, k)}};
                    }));

  if (ctx.is_over_c()) {
    report.merge(check_algebra_over_c(*ctx.over_A), "OverC.A.");
    report.merge(check_algebra_over_c(*ctx.over_Aprime), "OverC.Aprime.");
    report.merge(check_bimodule_over_c({*ctx.over_A, *ctx.over_Aprime, M}), "OverC.M.");
    report.merge(check_bimodule_over_c({*ctx.over_Aprime, *ctx.over_A, Mp}), "OverC.Mprime.");
  }
  return report;
}

/// Context on P, P* with evaluation (x, φ) ↦ φ(x) and [φ, x] = (y ↦ φ(y)·x).
inline MoritaContext context_from_endop(const EndOp& E) {
  const Dual D = dual_module(E);
  const GradedModule& P = E.bimodule;
  const AlgebraPtr& A = P.left_algebra();
  const std::size_t m = P.dim(), d = D.homs.dim();
  std::vector<std::vector<Vector>> f(m, std::vector<Vector>(d));
  std::vector<std::vector<Vector>> g(d, std::vector<Vector>(m));
  for (std::size_t b = 0; b < d; ++b) {
    const Matrix& phi = D.homs.basis[b];
    for (std::size_t i = 0; i < m; ++i) f[i][b] = phi.column(i);
    std::vector<Matrix> act_phi;  // y_c ↦ left action of φ(y_c)
    for (std::size_t c = 0; c < m; ++c) act_phi.push_back(P.left_action(phi.column(c)));
    for (std::size_t i = 0; i < m; ++i) {
      Matrix br(P.field(), m, m);
      for (std::size_t c = 0; c < m; ++c) br.set_column(c, act_phi[c].column(i));
      g[b][i] = E.homs.coordinates_or_throw(br);
    }
  }
  return MoritaContext{A, E.algebra, std::nullopt, std::nullopt, P, D.bimodule, std::move(f), std::move(g)};
}

/// The context on P without over-C structure; P need not be G-invariant.
inline MoritaContext build_graded_context(const GradedModule& P) { return context_from_endop(end_op_algebra(P)); }

/// The context on a G-invariant P over the C of X, with ζ' = θ∘ζ on A'.
inline MoritaContext build_canonical_context(const AlgebraOverC& X, const GradedModule& P) {
  if (!same_algebra(X.A, P.left_algebra())) throw Error(ErrorCode::PreconditionViolation, "context: P is not a module over X.A");
  const ThetaData T = canonical_theta(X, P);
  MoritaContext ctx = context_from_endop(T.endop);
  ctx.over_A = X;
  ctx.over_Aprime = make_algebra_over_c_on_endos(X, T);
  return ctx;
}

/// Linear map outer ⊗ inner → algebra induced by a bilinear pairing tensor.
struct PairingMap {
  TensorProduct tensor;
  Matrix map;
};

inline PairingMap pairing_map(const GradedModule& outer, const GradedModule& inner, const std::vector<std::vector<Vector>>& pairing,
                              const GradedAlgebra& target) {
  TensorProduct T = tensor_over(outer, inner);
  Matrix map(target.field(), target.dim(), T.module.dim());
  const std::size_t di = inner.dim();
  for (std::size_t q = 0; q < T.module.dim(); ++q) {
    Vector col = target.zero();
    for (std::size_t p = 0; p < T.section.rows(); ++p)
      if (!T.section(p, q).is_zero()) col = col + T.section(p, q) * pairing[p / di][p % di];
    map.set_column(q, col);
  }
  return PairingMap{std::move(T), std::move(map)};
}

/// Both induced maps M ⊗_{A'} M' → A and M' ⊗_A M → A' are bijective.
inline bool is_surjective_context(const MoritaContext& ctx) {
  const auto pf = pairing_map(ctx.M, ctx.Mprime, ctx.f, *ctx.A);
  const auto pg = pairing_map(ctx.Mprime, ctx.M, ctx.g, *ctx.Aprime);
  return is_invertible(pf.map) && is_invertible(pg.map);
}

struct ProgeneratorData {
  std::size_t trace_ideal_rank = 0;
  bool generator = false;
  bool dual_basis = false;
  bool progenerator() const { return generator && dual_basis; }
};

/// Trace ideal Σ im φ and the dual-basis condition id_P ∈ span{y ↦ φ(y)·x}.
inline ProgeneratorData progenerator_data(const GradedModule& P) {
  const GradedModule PL = P.as_left();
  const AlgebraPtr& A = PL.left_algebra();
  const Field& f = PL.field();
  const HomSpace dual = hom_graded(PL, regular_module(A), HomKind::Left);
  std::vector<Vector> images, brackets;
  for (const auto& phi : dual.basis) {
    for (std::size_t i = 0; i < PL.dim(); ++i) images.push_back(phi.column(i));
    std::vector<Matrix> act;
    for (std::size_t c = 0; c < PL.dim(); ++c) act.push_back(PL.left_action(phi.column(c)));
    for (std::size_t i = 0; i < PL.dim(); ++i) {
      Matrix br(f, PL.dim(), PL.dim());
      for (std::size_t c = 0; c < PL.dim(); ++c) br.set_column(c, act[c].column(i));
      brackets.push_back(br.flatten());
    }
  }
  ProgeneratorData out;
  out.trace_ideal_rank = images.empty() ? 0 : rank(Matrix::from_columns(f, A->dim(), images));
  out.generator = out.trace_ideal_rank == A->dim();
  const Vector id = Matrix::identity(f, PL.dim()).flatten();
  if (PL.dim() == 0) {
    out.dual_basis = true;
  } else if (!brackets.empty()) {
    out.dual_basis = solve(Matrix::from_columns(f, id.size(), brackets), id).has_value();
  }
  return out;
}

inline bool is_progenerator(const GradedModule& P) { return progenerator_data(P).progenerator(); }

/// Witness for a failure of `map` to be a graded isomorphism source → target
/// commuting with every action present on both.
inline std::optional<json> graded_iso_witness(const Matrix& map, const GradedModule& source, const GradedModule& target) {
  if (map.rows() != target.dim() || map.cols() != source.dim()) return json{{"reason", "shape"}};
  if (!is_invertible(map)) return json{{"reason", "not bijective"}, {"rank", rank(map)}, {"dim", target.dim()}};
  for (std::size_t c = 0; c < map.cols(); ++c)
    for (std::size_t r = 0; r < map.rows(); ++r)
      if (!map(r, c).is_zero() && target.degree(r) != source.degree(c))
        return json{{"reason", "not degree preserving"}, {"source_basis", c}, {"source_degree", source.group().label(source.degree(c))},
                    {"target_degree", source.group().label(target.degree(r))}};
  if (source.has_left() && target.has_left())
    for (std::size_t i = 0; i < source.left().matrices.size(); ++i)
      if (!(map * source.left().matrices[i] == target.left().matrices[i] * map))
        return json{{"reason", "not left linear"}, {"algebra_element", source.left_algebra()->name(i)}};
  if (source.has_right() && target.has_right())
    for (std::size_t i = 0; i < source.right().matrices.size(); ++i)
      if (!(map * source.right().matrices[i] == target.right().matrices[i] * map))
        return json{{"reason", "not right linear"}, {"algebra_element", source.right_algebra()->name(i)}};
  return std::nullopt;
}

/// outer ⊗ (inner ⊗ Y) → Y, o ⊗ (i ⊗ y) ↦ pair(o, i)·y.
struct EvaluationMap {
  TensorProduct inner;
  TensorProduct outer;
  Matrix map;
};

inline EvaluationMap evaluation_map(const GradedModule& outer, const GradedModule& inner, const std::vector<std::vector<Vector>>& pairing,
                                    const GradedModule& Y) {
  const GradedModule YL = Y.as_left();
  TensorProduct W = tensor_over(inner, YL);
  TensorProduct V = tensor_over(outer, W.module);
  const Field& f = Y.field();
  const std::size_t dO = outer.dim(), dI = inner.dim(), dY = YL.dim(), dW = W.module.dim();
  // columns: plain basis o ⊗ w of outer ⊗ W
  std::vector<std::vector<Matrix>> act(dO, std::vector<Matrix>(dI));
  for (std::size_t o = 0; o < dO; ++o)
    for (std::size_t i = 0; i < dI; ++i) act[o][i] = YL.left_action(pairing[o][i]);
  Matrix plain(f, dY, dO * dW);
  for (std::size_t o = 0; o < dO; ++o)
    for (std::size_t w = 0; w < dW; ++w) {
      Vector col = zero_vector(f, dY);
      for (std::size_t p = 0; p < W.section.rows(); ++p) {
        const Scalar& s = W.section(p, w);
        if (s.is_zero()) continue;
        col = col + s * act[o][p / dY].column(p % dY);
      }
      plain.set_column(o * dW + w, col);
    }
  Matrix map = plain * V.section;
  return EvaluationMap{std::move(W), std::move(V), std::move(map)};
}

/// id_B ⊗ φ on B ⊗ X → B ⊗ Y in quotient coordinates.
inline Matrix tensor_map(const TensorProduct& TX, const TensorProduct& TY, const Matrix& phi) {
  return TY.projection * kronecker(Matrix::identity(phi.field(), TX.left_dim), phi) * TX.section;
}

struct Sample {
  std::string name;
  GradedModule module;
};

/// A, A(g) for g ≠ 1, and M as a left A-module.
inline std::vector<Sample> default_samples(const MoritaContext& ctx) {
  std::vector<Sample> out;
  const auto R = regular_module(ctx.A);
  out.push_back({"A", R});
  for (auto g : ctx.A->group().elements())
    if (g != ctx.A->group().identity()) out.push_back({"A(" + ctx.A->group().label(g) + ")", suspend(R, g)});
  out.push_back({"M", ctx.M.as_left()});
  return out;
}

namespace detail {

// T(Θ_Y(c')∘φ∘Θ_X(c)) = Θ_TY(c')∘T(φ)∘Θ_TX(c), degree and linearity of T(φ),
// for the functor B ⊗_A − between algebras over C.
inline void check_hom_level(ValidationReport& report, const std::string& prefix, const GradedModule& B, const AlgebraOverC& over_src,
                            const AlgebraOverC& over_dst, const std::vector<Sample>& samples) {
  const auto& G = B.group();
  const auto& C = *over_src.C.algebra;
  std::vector<TensorProduct> T;
  std::vector<ThetaOnModule> th_src, th_dst;
  for (const auto& s : samples) {
    T.push_back(tensor_over(B, s.module.as_left()));
    th_src.emplace_back(over_src, s.module);
    th_dst.emplace_back(over_dst, T.back().module);
  }
  std::vector<std::vector<Matrix>> th_src_c(samples.size()), th_dst_c(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s)
    for (std::size_t c = 0; c < C.dim(); ++c) {
      th_src_c[s].push_back(th_src[s](C.basis_vector(c)));
      th_dst_c[s].push_back(th_dst[s](C.basis_vector(c)));
    }
  for (std::size_t x = 0; x < samples.size(); ++x)
    for (std::size_t y = 0; y < samples.size(); ++y) {
      const std::string name = prefix + samples[x].name + "->" + samples[y].name;
      const HomSpace H = hom_graded(samples[x].module.as_left(), samples[y].module.as_left(), HomKind::Left);
      std::optional<json> linear, degree, overc;
      for (std::size_t b = 0; b < H.dim(); ++b) {
        const Matrix Tphi = tensor_map(T[x], T[y], H.basis[b]);
        const GradedModule& TX = T[x].module;
        const GradedModule& TY = T[y].module;
        if (!linear)
          for (std::size_t a = 0; a < TX.left().matrices.size() && !linear; ++a)
            if (!(Tphi * TX.left().matrices[a] == TY.left().matrices[a] * Tphi)) linear = json{{"hom", b}, {"algebra_element", a}};
        if (!degree)
          for (std::size_t c = 0; c < Tphi.cols() && !degree; ++c)
            for (std::size_t r = 0; r < Tphi.rows() && !degree; ++r)
              if (!Tphi(r, c).is_zero() && TY.degree(r) != G.mul(TX.degree(c), H.degree[b]))
                degree = json{{"hom", b}, {"hom_degree", G.label(H.degree[b])}, {"source_degree", G.label(TX.degree(c))}};
        for (std::size_t c = 0; c < C.dim() && !overc; ++c)
          for (std::size_t cp = 0; cp < C.dim() && !overc; ++cp) {
            const Matrix inner = th_src_c[y][cp] * H.basis[b] * th_src_c[x][c];
            const Matrix lhs = tensor_map(T[x], T[y], inner);
            const Matrix rhs = th_dst_c[y][cp] * Tphi * th_dst_c[x][c];
            if (!(lhs == rhs))
              overc = json{{"hom", b}, {"hom_degree", G.label(H.degree[b])}, {"c", C.name(c)}, {"c'", C.name(cp)}};
          }
      }
      report.record(name + ".Linear", "T(phi) is linear", linear);
      report.record(name + ".Degree", "T(Hom_h) in Hom_h", degree);
      report.record(name + ".OverC", "T(c' phi c) = c' T(phi) c", overc);
    }
}

}  // namespace detail

/// Unit and counit graded isos, suspension commutation, and the Hom-level
/// (C, C)-bimodule property of M' ⊗_A − on each sample.
inline ValidationReport verify_morita_I(const MoritaContext& ctx, const std::vector<Sample>& samples) {
  if (!is_surjective_context(ctx)) throw Error(ErrorCode::NotSurjective, "verify_morita_I: context is not surjective");
  if (!ctx.is_over_c()) throw Error(ErrorCode::PreconditionViolation, "verify_morita_I: context carries no over-C structure");
  ValidationReport report;
  const auto& G = ctx.A->group();
  for (const auto& s : samples) {
    const GradedModule X = s.module.as_left();
    if (!same_algebra(X.left_algebra(), ctx.A)) throw Error(ErrorCode::PreconditionViolation, "sample " + s.name + " is not an A-module");
    const auto unit = evaluation_map(ctx.M, ctx.Mprime, ctx.f, X);
    report.record("Unit." + s.name, "M (x)_A' (M' (x)_A X) = X", graded_iso_witness(unit.map, unit.outer.module, X));
    const GradedModule TX = unit.inner.module;
    const auto counit = evaluation_map(ctx.Mprime, ctx.M, ctx.g, TX);
    report.record("Counit." + s.name, "M' (x)_A (M (x)_A' Y) = Y", graded_iso_witness(counit.map, counit.outer.module, TX));
    for (auto g : G.elements()) {
      const GradedModule lhs = tensor_over(ctx.Mprime, suspend(X, g)).module.as_left();
      const GradedModule rhs = suspend(TX.as_left(), g);
      report.record("Suspension." + s.name + "." + G.label(g), "T(X(g)) = T(X)(g)",
                    is_graded_iso(lhs, rhs) ? std::nullopt : std::optional<json>(json{{"sample", s.name}, {"g", G.label(g)}}));
    }
  }
  detail::check_hom_level(report, "HomLevel.", ctx.Mprime, *ctx.over_A, *ctx.over_Aprime, samples);
  return report;
}

inline ValidationReport verify_morita_I(const MoritaContext& ctx) { return verify_morita_I(ctx, default_samples(ctx)); }

/// A functor given by tensoring with a bimodule: left algebra is the target.
struct FunctorData {
  BimoduleOverC bimodule;
  std::string direction;
};

inline ValidationReport check_same_stabilizer(const GradedModule& F, const GradedModule& P) {
  ValidationReport report;
  const Subgroup before = stabilizer(P.as_left());
  const Subgroup after = stabilizer(tensor_over(F, P.as_left()).module.as_left());
  report.record("SameStabilizer", "G_P = G_T(P)",
                before.members == after.members ? std::nullopt : std::optional<json>(json{{"source", before.labels()}, {"image", after.labels()}}));
  return report;
}

inline ValidationReport check_same_stabilizer(const FunctorData& F, const GradedModule& P) { return check_same_stabilizer(F.bimodule.M, P); }

/// Graded bimodule isos QF ⊗_A QG → A' (wf) and QG ⊗_A' QF → A (wg), as
/// matrices on tensor quotient coordinates.
struct MoritaWitnesses {
  Matrix wf;
  Matrix wg;
};

/// QF = M' (A' ← A), QG = M (A ← A'), witnesses from g and f.
inline std::tuple<FunctorData, FunctorData, MoritaWitnesses> witnesses_from_context(const MoritaContext& ctx) {
  if (!ctx.is_over_c()) throw Error(ErrorCode::PreconditionViolation, "witnesses: context carries no over-C structure");
  FunctorData QF{{*ctx.over_Aprime, *ctx.over_A, ctx.Mprime}, "A->A'"};
  FunctorData QG{{*ctx.over_A, *ctx.over_Aprime, ctx.M}, "A'->A"};
  auto wf = pairing_map(ctx.Mprime, ctx.M, ctx.g, *ctx.Aprime).map;
  auto wg = pairing_map(ctx.M, ctx.Mprime, ctx.f, *ctx.A).map;
  return {std::move(QF), std::move(QG), MoritaWitnesses{std::move(wf), std::move(wg)}};
}

/// QF with its right action and QG with its left action precomposed with the
/// algebra automorphism σ of A (columns: σ(e_i)); wg becomes σ⁻¹∘wg.
inline std::tuple<FunctorData, FunctorData, MoritaWitnesses> twist_by_automorphism(const FunctorData& QF, const FunctorData& QG,
                                                                                   const MoritaWitnesses& W, const Matrix& sigma) {
  auto sinv = inverse(sigma);
  if (!sinv) throw Error(ErrorCode::PreconditionViolation, "twist: sigma is not invertible");
  auto twisted = [&](const GradedModule& M, bool right) {
    Action a = right ? M.right() : M.left();
    for (std::size_t i = 0; i < a.matrices.size(); ++i)
      a.matrices[i] = right ? M.right_action(sigma.column(i)) : M.left_action(sigma.column(i));
    return right ? GradedModule(M.degrees(), M.left(), a) : GradedModule(M.degrees(), a, M.right());
  };
  FunctorData F2 = QF;
  F2.bimodule.M = twisted(QF.bimodule.M, true);
  FunctorData G2 = QG;
  G2.bimodule.M = twisted(QG.bimodule.M, false);
  return {std::move(F2), std::move(G2), MoritaWitnesses{W.wf, *sinv * W.wg}};
}

/// (a) P = QF ⊗_A A is a bimodule over C; (b) α(a) = (p ↦ p·a) is a graded
/// algebra iso A → End_A'(P)^op with α∘ζ = ζ''; (c) P ⊗_A − ≅ QF ⊗_A −
/// naturally on the samples. Throws WitnessNotIso for invalid witnesses.
inline ValidationReport verify_morita_II(const FunctorData& QF, const FunctorData& QG, const MoritaWitnesses& W,
                                         const std::vector<Sample>& samples) {
  const AlgebraOverC& XA = QF.bimodule.right;
  const AlgebraOverC& XAp = QF.bimodule.left;
  const AlgebraPtr& A = XA.A;
  const AlgebraPtr& Ap = XAp.A;
  {
    const TensorProduct tf = tensor_over(QF.bimodule.M, QG.bimodule.M);
    if (auto w = graded_iso_witness(W.wf, tf.module, regular_bimodule(Ap)))
      throw Error(ErrorCode::WitnessNotIso, "QF (x) QG -> A': " + w->dump());
    const TensorProduct tg = tensor_over(QG.bimodule.M, QF.bimodule.M);
    if (auto w = graded_iso_witness(W.wg, tg.module, regular_bimodule(A)))
      throw Error(ErrorCode::WitnessNotIso, "QG (x) QF -> A: " + w->dump());
  }
  ValidationReport report;
  detail::check_hom_level(report, "HomLevel.", QF.bimodule.M, XA, XAp, samples);

  const TensorProduct PT = tensor_over(QF.bimodule.M, regular_bimodule(A));
  const GradedModule& P = PT.module;
  const ValidationReport over = check_bimodule_over_c({XAp, XA, P});
  report.merge(over, "P.");
  report.record("P.OverC", "P is a graded (A',A)-bimodule over C",
                over.passed() ? std::nullopt
                              : std::optional<json>(json{{"code", to_string(ErrorCode::OverCViolation)}, {"failed", over.failures()},
                                                         {"witness", over.find(over.failures().front())->witness}}));

  const EndOp E = end_op_algebra(P.as_left());
  Matrix alpha(A->field(), E.algebra->dim(), A->dim());
  bool alpha_defined = true;
  for (std::size_t i = 0; i < A->dim(); ++i) {
    auto c = E.homs.coordinates(P.right().matrices[i]);
    if (!c) {
      alpha_defined = false;
      break;
    }
    alpha.set_column(i, *c);
  }
  report.record("Alpha.Defined", "p -> p a is A'-linear", alpha_defined ? std::nullopt : std::optional<json>(json{{"alpha", "undefined"}}));
  if (alpha_defined) {
    const AlgebraHom ah{A, E.algebra, alpha};
    report.merge(check_algebra_hom(ah, true), "Alpha.");
    report.record("Alpha.Bijective", "alpha is bijective", is_invertible(alpha) ? std::nullopt : std::optional<json>(json{{"rank", rank(alpha)}}));
    std::optional<json> zeta_w;
    try {
      const AlgebraOverC dd = make_algebra_over_c_on_endos(XAp, P.as_left());
      const Matrix lhs = alpha * XA.zeta;
      for (std::size_t c = 0; c < lhs.cols() && !zeta_w; ++c)
        if (!(lhs.column(c) == dd.zeta.column(c))) zeta_w = json{{"c", XA.C.algebra->name(c)}, {"c_degree", A->group().label(XA.C.algebra->degree(c))}};
    } catch (const Error& e) {
      zeta_w = json{{"error", e.what()}};
    }
    report.record("AlphaZeta", "alpha(zeta(c)) = zeta''(c)", zeta_w);
  }

  // η_X: P ⊗_A X → QF ⊗_A X, (q ⊗ a) ⊗ x ↦ q ⊗ a·x
  std::vector<TensorProduct> PX, QX;
  std::vector<Matrix> eta;
  const std::size_t dA = A->dim();
  const std::size_t dq = QF.bimodule.M.dim();
  for (const auto& s : samples) {
    const GradedModule X = s.module.as_left();
    PX.push_back(tensor_over(P, X));
    QX.push_back(tensor_over(QF.bimodule.M, X));
    const std::size_t dX = X.dim();
    Matrix plain(A->field(), dq * dX, P.dim() * dX);
    for (std::size_t p = 0; p < P.dim(); ++p)
      for (std::size_t r = 0; r < PT.section.rows(); ++r) {
        const Scalar& s0 = PT.section(r, p);
        if (s0.is_zero()) continue;
        const std::size_t q = r / dA, a = r % dA;
        const Matrix& La = X.left().matrices[a];
        for (std::size_t x = 0; x < dX; ++x)
          for (std::size_t y = 0; y < dX; ++y)
            if (!La(y, x).is_zero()) plain(q * dX + y, p * dX + x) += s0 * La(y, x);
      }
    eta.push_back(QX.back().projection * plain * PX.back().section);
    report.record("Natural." + s.name, "P (x)_A X = QF (x)_A X", graded_iso_witness(eta.back(), PX.back().module, QX.back().module));
  }
  for (std::size_t x = 0; x < samples.size(); ++x)
    for (std::size_t y = 0; y < samples.size(); ++y) {
      const HomSpace H = hom_graded(samples[x].module.as_left(), samples[y].module.as_left(), HomKind::Left);
      std::optional<json> w;
      for (std::size_t b = 0; b < H.dim() && !w; ++b)
        if (!(eta[y] * tensor_map(PX[x], PX[y], H.basis[b]) == tensor_map(QX[x], QX[y], H.basis[b]) * eta[x]))
          w = json{{"hom", b}, {"hom_degree", A->group().label(H.degree[b])}};
      report.record("Naturality." + samples[x].name + "->" + samples[y].name, "eta_Y (P phi) = (QF phi) eta_X", w);
    }
  return report;
}

/// A' ≅ End_A(M)^op via a' ↦ (m ↦ m·a') and M' ≅ M* via m' ↦ f(−, m').
inline ValidationReport check_uniqueness(const MoritaContext& ctx) {
  ValidationReport report;
  const EndOp E = end_op_algebra(ctx.M.as_left());
  Matrix rho(ctx.A->field(), E.algebra->dim(), ctx.Aprime->dim());
  std::optional<json> w;
  for (std::size_t a = 0; a < ctx.Aprime->dim() && !w; ++a) {
    auto c = E.homs.coordinates(ctx.M.right().matrices[a]);
    if (!c) w = json{{"a'", ctx.Aprime->name(a)}, {"reason", "not A-linear"}};
    else rho.set_column(a, *c);
  }
  if (!w) {
    const auto hom = check_algebra_hom({ctx.Aprime, E.algebra, rho}, true);
    if (!hom.passed()) w = json{{"failed", hom.failures()}};
    else if (!is_invertible(rho)) w = json{{"reason", "not bijective"}};
  }
  report.record("EndOpIso", "A' = End_A(M)^op", w);

  const Dual D = dual_module(E);
  Matrix delta(ctx.A->field(), D.homs.dim(), ctx.Mprime.dim());
  std::optional<json> wd;
  for (std::size_t j = 0; j < ctx.Mprime.dim() && !wd; ++j) {
    Matrix phi(ctx.A->field(), ctx.A->dim(), ctx.M.dim());
    for (std::size_t i = 0; i < ctx.M.dim(); ++i) phi.set_column(i, ctx.f[i][j]);
    auto c = D.homs.coordinates(phi);
    if (!c) wd = json{{"m'", j}, {"reason", "f(-, m') is not A-linear"}};
    else delta.set_column(j, *c);
  }
  if (!wd) {
    // M* carries a left action of End_A(M)^op; transport it to A' through rho
    std::vector<Matrix> left;
    for (std::size_t a = 0; a < ctx.Aprime->dim(); ++a) left.push_back(D.bimodule.left_action(rho.column(a)));
    const GradedModule target = GradedModule::bimodule(ctx.Aprime, std::move(left), ctx.A, D.bimodule.right().matrices, D.bimodule.degrees());
    wd = graded_iso_witness(delta, ctx.Mprime, target);
  }
  report.record("DualIso", "M' = M*", wd);
  return report;
}

}  // namespace gmorita
