#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gmorita/graded_algebra.hpp"

namespace gmorita {

/// Matrices of the action of each algebra basis vector.
struct Action {
  AlgebraPtr algebra;
  std::vector<Matrix> matrices;
};

enum class HomKind { Left, Right, Both };

/// Graded module with a degree label per basis vector. A left module carries
/// only a left action, a right module only a right action, a bimodule both.
class GradedModule {
 public:
  GradedModule(std::vector<GroupElt> degree, std::optional<Action> left, std::optional<Action> right)
      : degree_(std::move(degree)), left_(std::move(left)), right_(std::move(right)) {
    if (!left_ && !right_) throw Error(ErrorCode::ShapeMismatch, "module needs at least one action");
    const auto& A = left_ ? *left_->algebra : *right_->algebra;
    field_ = A.field();
    group_ = A.group();
    if (left_ && right_ && !(left_->algebra->group() == right_->algebra->group()))
      throw Error(ErrorCode::ShapeMismatch, "bimodule: algebras graded by different groups");
    for (const auto* act : {left_ ? &*left_ : nullptr, right_ ? &*right_ : nullptr}) {
      if (!act) continue;
      if (!(act->algebra->field() == field_)) throw Error(ErrorCode::ScalarKindMismatch, "module: algebras over different fields");
      if (act->matrices.size() != act->algebra->dim()) throw Error(ErrorCode::ShapeMismatch, "module: one action matrix per algebra basis vector");
      for (const auto& m : act->matrices)
        if (m.rows() != dim() || m.cols() != dim()) throw Error(ErrorCode::ShapeMismatch, "module: action matrix size");
    }
    for (auto g : degree_)
      if (g.index >= group_.order()) throw Error(ErrorCode::ShapeMismatch, "module: degree out of range");
  }

  static GradedModule left_module(const AlgebraPtr& A, std::vector<GroupElt> degree, std::vector<Matrix> action) {
    return GradedModule(std::move(degree), Action{A, std::move(action)}, std::nullopt);
  }
  static GradedModule right_module(const AlgebraPtr& A, std::vector<GroupElt> degree, std::vector<Matrix> action) {
    return GradedModule(std::move(degree), std::nullopt, Action{A, std::move(action)});
  }
  static GradedModule bimodule(const AlgebraPtr& L, std::vector<Matrix> left, const AlgebraPtr& R, std::vector<Matrix> right,
                               std::vector<GroupElt> degree) {
    return GradedModule(std::move(degree), Action{L, std::move(left)}, Action{R, std::move(right)});
  }

  const Field& field() const { return field_; }
  const FiniteGroup& group() const { return group_; }
  std::size_t dim() const { return degree_.size(); }
  GroupElt degree(std::size_t i) const { return degree_.at(i); }
  const std::vector<GroupElt>& degrees() const { return degree_; }

  bool has_left() const { return left_.has_value(); }
  bool has_right() const { return right_.has_value(); }
  bool is_bimodule() const { return has_left() && has_right(); }
  HomKind kind() const { return is_bimodule() ? HomKind::Both : has_left() ? HomKind::Left : HomKind::Right; }

  const Action& left() const {
    if (!left_) throw Error(ErrorCode::KindMismatch, "module has no left action");
    return *left_;
  }
  const Action& right() const {
    if (!right_) throw Error(ErrorCode::KindMismatch, "module has no right action");
    return *right_;
  }
  const AlgebraPtr& left_algebra() const { return left().algebra; }
  const AlgebraPtr& right_algebra() const { return right().algebra; }

  /// Matrix of m ↦ a·m for a given in algebra coordinates.
  Matrix left_action(const Vector& a) const { return combine(left().matrices, a); }
  /// Matrix of m ↦ m·a.
  Matrix right_action(const Vector& a) const { return combine(right().matrices, a); }

  /// Same module with only one side kept.
  GradedModule as_left() const { return GradedModule(degree_, left(), std::nullopt); }
  GradedModule as_right() const { return GradedModule(degree_, std::nullopt, right()); }

  std::vector<std::size_t> basis_of_degree(GroupElt g) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degree_[i] == g) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> component_dims() const {
    std::vector<std::size_t> dims(group_.order(), 0);
    for (auto g : degree_) ++dims[g.index];
    return dims;
  }

  Vector zero() const { return zero_vector(field_, dim()); }

  friend bool operator==(const GradedModule& a, const GradedModule& b) {
    auto same = [](const std::optional<Action>& x, const std::optional<Action>& y) {
      if (x.has_value() != y.has_value()) return false;
      return !x || (same_algebra(x->algebra, y->algebra) && x->matrices == y->matrices);
    };
    return a.degree_ == b.degree_ && same(a.left_, b.left_) && same(a.right_, b.right_);
  }

 private:
  Matrix combine(const std::vector<Matrix>& mats, const Vector& a) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t i = 0; i < mats.size(); ++i)
      if (!a[i].is_zero()) m += a[i] * mats[i];
    return m;
  }

  Field field_;
  FiniteGroup group_;
  std::vector<GroupElt> degree_;
  std::optional<Action> left_;
  std::optional<Action> right_;
};

namespace detail {

// First (row, col) entry of a degree-shifting map that leaves the prescribed
// target degree, where target(col_degree) gives the allowed row degree.
template <class Target>
std::optional<std::pair<std::size_t, std::size_t>> grading_violation(const Matrix& m, const std::vector<GroupElt>& row_deg,
                                                                     const std::vector<GroupElt>& col_deg, Target target) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const GroupElt want = target(col_deg[c]);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero() && row_deg[r] != want) return std::make_pair(r, c);
  }
  return std::nullopt;
}

inline void check_action(ValidationReport& report, const GradedModule& M, const Action& act, bool left) {
  const auto& A = *act.algebra;
  const auto& G = M.group();
  const std::string side = left ? "Left" : "Right";
  const Matrix id = Matrix::identity(M.field(), M.dim());
  const Matrix one = left ? M.left_action(A.unit()) : M.right_action(A.unit());
  report.record(side + "Unit", left ? "1m = m" : "m1 = m", one == id ? std::nullopt : std::optional<json>(json{{"unit_acts_as", "non-identity"}}));

  std::optional<json> mult;
  for (std::size_t i = 0; i < A.dim() && !mult; ++i)
    for (std::size_t j = 0; j < A.dim() && !mult; ++j) {
      const Matrix prod = left ? M.left_action(A.product(i, j)) : M.right_action(A.product(i, j));
      const Matrix comp = left ? act.matrices[i] * act.matrices[j] : act.matrices[j] * act.matrices[i];
      if (!(prod == comp)) mult = json{{"pair", {A.name(i), A.name(j)}}};
    }
  report.record(side + "Multiplicative", left ? "(ab)m = a(bm)" : "m(ab) = (ma)b", mult);

  std::optional<json> grading;
  for (std::size_t i = 0; i < A.dim() && !grading; ++i) {
    const GroupElt k = A.degree(i);
    auto v = grading_violation(act.matrices[i], M.degrees(), M.degrees(),
                               [&](GroupElt x) { return left ? G.mul(k, x) : G.mul(x, k); });
    if (v)
      grading = json{{"algebra_element", A.name(i)},
                     {"algebra_degree", G.label(k)},
                     {"module_basis", v->second},
                     {"module_degree", G.label(M.degree(v->second))},
                     {"lands_on", v->first},
                     {"lands_degree", G.label(M.degree(v->first))}};
  }
  report.record(side + "Grading", left ? "A_g M_x in M_gx" : "M_x A_g in M_xg", grading);
}

}  // namespace detail

/// Representation laws and grading of each action; commutation for bimodules.
inline ValidationReport check_graded_module(const GradedModule& M) {
  ValidationReport report;
  if (M.has_left()) detail::check_action(report, M, M.left(), true);
  if (M.has_right()) detail::check_action(report, M, M.right(), false);
  if (M.is_bimodule()) {
    std::optional<json> comm;
    const auto& L = M.left();
    const auto& R = M.right();
    for (std::size_t i = 0; i < L.matrices.size() && !comm; ++i)
      for (std::size_t j = 0; j < R.matrices.size() && !comm; ++j)
        if (!(L.matrices[i] * R.matrices[j] == R.matrices[j] * L.matrices[i]))
          comm = json{{"left", L.algebra->name(i)}, {"right", R.algebra->name(j)}};
    report.record("ActionsCommute", "(am)b = a(mb)", comm);
  }
  return report;
}

inline GradedModule regular_module(const AlgebraPtr& A) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < A->dim(); ++i) act.push_back(A->left_mult(i));
  return GradedModule::left_module(A, A->degrees(), std::move(act));
}

inline GradedModule regular_right_module(const AlgebraPtr& A) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < A->dim(); ++i) act.push_back(A->right_mult(i));
  return GradedModule::right_module(A, A->degrees(), std::move(act));
}

/// A as an (A,A)-bimodule.
inline GradedModule regular_bimodule(const AlgebraPtr& A) {
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < A->dim(); ++i) {
    l.push_back(A->left_mult(i));
    r.push_back(A->right_mult(i));
  }
  return GradedModule::bimodule(A, std::move(l), A, std::move(r), A->degrees());
}

inline GradedModule zero_module(const AlgebraPtr& A) {
  return GradedModule::left_module(A, {}, std::vector<Matrix>(A->dim(), Matrix(A->field(), 0, 0)));
}

inline GradedModule direct_sum(const GradedModule& M, const GradedModule& N) {
  if (M.kind() != N.kind()) throw Error(ErrorCode::KindMismatch, "direct_sum: modules of different sides");
  auto sum = [&](const Action& a, const Action& b) {
    if (!same_algebra(a.algebra, b.algebra)) throw Error(ErrorCode::PreconditionViolation, "direct_sum: different algebras");
    Action out{a.algebra, {}};
    for (std::size_t i = 0; i < a.matrices.size(); ++i) out.matrices.push_back(direct_sum(a.matrices[i], b.matrices[i]));
    return out;
  };
  std::vector<GroupElt> deg = M.degrees();
  deg.insert(deg.end(), N.degrees().begin(), N.degrees().end());
  std::optional<Action> l, r;
  if (M.has_left()) l = sum(M.left(), N.left());
  if (M.has_right()) r = sum(M.right(), N.right());
  return GradedModule(std::move(deg), std::move(l), std::move(r));
}

/// M(g). Left modules: M(g)_h = M_{hg}, so a vector of old degree d gets
/// degree d·g⁻¹. Right modules: M(g)_h = M_{gh}, new degree g⁻¹·d.
inline GradedModule suspend(const GradedModule& M, GroupElt g) {
  if (M.is_bimodule()) throw Error(ErrorCode::KindMismatch, "suspend: defined for one-sided modules");
  const auto& G = M.group();
  const GroupElt gi = G.inv(g);
  std::vector<GroupElt> deg;
  for (auto d : M.degrees()) deg.push_back(M.has_left() ? G.mul(d, gi) : G.mul(gi, d));
  return GradedModule(std::move(deg), M.has_left() ? std::optional<Action>(M.left()) : std::nullopt,
                      M.has_right() ? std::optional<Action>(M.right()) : std::nullopt);
}

/// Degree of target basis vector allowed for a hom of degree g applied to a
/// source vector of degree x: x·g for left-linear maps, g·x for right-linear.
inline GroupElt hom_target_degree(const FiniteGroup& G, HomKind kind, GroupElt x, GroupElt g) {
  return kind == HomKind::Right ? G.mul(g, x) : G.mul(x, g);
}

/// Graded Hom space with a homogeneous basis.
struct HomSpace {
  HomKind kind = HomKind::Left;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<Matrix> basis;
  std::vector<GroupElt> degree;
  SpanCoordinates coords;  // over flattened matrices

  std::size_t dim() const { return basis.size(); }

  std::vector<std::size_t> basis_of_degree(GroupElt g) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (degree[i] == g) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> component_dims(const FiniteGroup& G) const {
    std::vector<std::size_t> dims(G.order(), 0);
    for (auto g : degree) ++dims[g.index];
    return dims;
  }

  std::optional<Vector> coordinates(const Matrix& f) const { return coords.coordinates(f.flatten()); }

  Vector coordinates_or_throw(const Matrix& f) const { return coords.coordinates_or_throw(f.flatten(), "hom coordinates"); }

  Matrix element(const Vector& c) const {
    Matrix m(coords.basis_matrix().field(), target_dim, source_dim);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!c[i].is_zero()) m += c[i] * basis[i];
    return m;
  }
};

namespace detail {

// Linear constraints T·F − F·S = 0 on the unknown entries listed in `unknowns`.
inline void add_commutation_rows(std::vector<Vector>& rows, const Matrix& T, const Matrix& S,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& unknowns, std::size_t nt, std::size_t ns) {
  const Field& f = T.field();
  const std::size_t first = rows.size();
  rows.resize(first + nt * ns, zero_vector(f, unknowns.size()));
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto [k, c] = unknowns[u];
    // (T F)(r, c) gets T(r, k)
    for (std::size_t r = 0; r < nt; ++r)
      if (!T(r, k).is_zero()) rows[first + r * ns + c][u] += T(r, k);
    // (F S)(k, c2) gets S(c, c2)
    for (std::size_t c2 = 0; c2 < ns; ++c2)
      if (!S(c, c2).is_zero()) rows[first + k * ns + c2][u] -= S(c, c2);
  }
}

inline Matrix rows_to_matrix(const Field& f, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (is_zero(row)) continue;
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    ++r;
  }
  return m.block(0, 0, r, cols);
}

inline void require_same_algebras(const GradedModule& M, const GradedModule& N, HomKind kind) {
  if (kind != HomKind::Right && (!M.has_left() || !N.has_left() || !same_algebra(M.left_algebra(), N.left_algebra())))
    throw Error(ErrorCode::PreconditionViolation, "hom: modules are not left modules over the same algebra");
  if (kind != HomKind::Left && (!M.has_right() || !N.has_right() || !same_algebra(M.right_algebra(), N.right_algebra())))
    throw Error(ErrorCode::PreconditionViolation, "hom: modules are not right modules over the same algebra");
}

}  // namespace detail

/// Homogeneous basis of the degree-g part of Hom(M, N).
inline std::vector<Matrix> hom_component(const GradedModule& M, const GradedModule& N, HomKind kind, GroupElt g) {
  detail::require_same_algebras(M, N, kind);
  const Field& f = M.field();
  const auto& G = M.group();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t c = 0; c < M.dim(); ++c) {
    const GroupElt want = hom_target_degree(G, kind, M.degree(c), g);
    for (std::size_t r = 0; r < N.dim(); ++r)
      if (N.degree(r) == want) unknowns.emplace_back(r, c);
  }
  if (unknowns.empty()) return {};
  std::vector<Vector> rows;
  if (kind != HomKind::Right)
    for (std::size_t i = 0; i < M.left().matrices.size(); ++i)
      detail::add_commutation_rows(rows, N.left().matrices[i], M.left().matrices[i], unknowns, N.dim(), M.dim());
  if (kind != HomKind::Left)
    for (std::size_t i = 0; i < M.right().matrices.size(); ++i)
      detail::add_commutation_rows(rows, N.right().matrices[i], M.right().matrices[i], unknowns, N.dim(), M.dim());
  const Matrix sys = detail::rows_to_matrix(f, rows, unknowns.size());
  std::vector<Matrix> out;
  for (const auto& k : kernel_vectors(sys)) {
    Matrix F(f, N.dim(), M.dim());
    for (std::size_t u = 0; u < unknowns.size(); ++u) F(unknowns[u].first, unknowns[u].second) = k[u];
    out.push_back(std::move(F));
  }
  return out;
}

/// Hom(M, N) solved degree by degree; the basis is ordered by degree index.
/// For bimodule maps the left convention f(M_x) ⊆ N_{xg} is used.
inline HomSpace hom_graded(const GradedModule& M, const GradedModule& N, std::optional<HomKind> kind = std::nullopt) {
  const HomKind k = kind.value_or(M.kind());
  HomSpace H;
  H.kind = k;
  H.source_dim = M.dim();
  H.target_dim = N.dim();
  std::vector<Vector> flat;
  for (auto g : M.group().elements()) {
    for (auto& F : hom_component(M, N, k, g)) {
      flat.push_back(F.flatten());
      H.basis.push_back(std::move(F));
      H.degree.push_back(g);
    }
  }
  H.coords = SpanCoordinates(M.field(), M.dim() * N.dim(), flat);
  return H;
}

/// A degree-1 invertible element of Hom(M, N), or nullopt.
inline std::optional<Matrix> is_graded_iso(const GradedModule& M, const GradedModule& N, std::optional<HomKind> kind = std::nullopt) {
  if (M.dim() != N.dim()) return std::nullopt;
  auto basis = hom_component(M, N, kind.value_or(M.kind()), M.group().identity());
  if (M.dim() == 0) return Matrix(M.field(), 0, 0);
  return generic_invertible_element(basis);
}

inline std::optional<Matrix> find_bimodule_iso(const GradedModule& M, const GradedModule& N) { return is_graded_iso(M, N, HomKind::Both); }

/// G_M = {g | M ≅ M(g)}.
inline Subgroup stabilizer(const GradedModule& M) {
  std::vector<GroupElt> members;
  for (auto g : M.group().elements())
    if (is_graded_iso(M, suspend(M, g))) members.push_back(g);
  return stabilizer_closure(M.group(), members);
}

inline bool is_g_invariant(const GradedModule& M) { return stabilizer(M).is_whole_group(); }

/// A ⊗_B U with basis u_g ⊗ u_j (index g·dim U + j) of degree g, where
/// a·(u_g ⊗ u) = u_k ⊗ (u_k⁻¹ a u_g)·u for homogeneous a.
inline GradedModule induce(const SubalgebraEmbedding& B, const CrossedProductData& cp, const GradedModule& U) {
  const AlgebraPtr& A = cp.algebra;
  if (!same_algebra(A, B.ambient)) throw Error(ErrorCode::PreconditionViolation, "induce: embedding and crossed product differ");
  if (!check_crossed_product(cp).passed()) throw Error(ErrorCode::NotCrossedProduct, "induce: invalid crossed-product data");
  if (!U.has_left() || !same_algebra(U.left_algebra(), B.sub)) throw Error(ErrorCode::PreconditionViolation, "induce: U is not a left B-module");
  const auto& G = A->group();
  for (auto d : U.degrees())
    if (d != G.identity()) throw Error(ErrorCode::PreconditionViolation, "induce: U must be concentrated in degree 1");
  for (auto d : B.sub->degrees())
    if (d != G.identity()) throw Error(ErrorCode::PreconditionViolation, "induce: B must be the identity component");

  const std::size_t n = G.order();
  const std::size_t m = U.dim();
  std::vector<GroupElt> degree;
  for (auto g : G.elements())
    for (std::size_t j = 0; j < m; ++j) degree.push_back(g);
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < A->dim(); ++i) {
    Matrix act(A->field(), n * m, n * m);
    const Vector e = A->basis_vector(i);
    for (auto g : G.elements()) {
      const GroupElt k = G.mul(A->degree(i), g);
      const Vector b = A->multiply(A->multiply(cp.unit_inverse(k), e), cp.unit(g));
      auto coords = B.to_sub(b);
      if (!coords) throw Error(ErrorCode::NotCrossedProduct, "induce: u_k^-1 a u_g not in B");
      act.set_block(k.index * m, g.index * m, U.left_action(*coords));
    }
    action.push_back(std::move(act));
  }
  return GradedModule::left_module(A, std::move(degree), std::move(action));
}

/// R ⊗_C L as a quotient of the plain tensor product (index r·dim L + l).
/// projection maps plain coordinates to quotient coordinates; section picks
/// the representative basis vectors.
struct TensorProduct {
  GradedModule module;
  Matrix projection;
  Matrix section;
  std::size_t left_dim = 0;   // dim R
  std::size_t right_dim = 0;  // dim L

  Vector pure(const Vector& r, const Vector& l) const {
    Vector v(left_dim * right_dim, projection.field().zero());
    for (std::size_t i = 0; i < left_dim; ++i) {
      if (r[i].is_zero()) continue;
      for (std::size_t j = 0; j < right_dim; ++j) v[i * right_dim + j] = r[i] * l[j];
    }
    return projection * v;
  }
};

/// R must carry a right action and L a left action by the same algebra.
/// Residual actions: left action of R (if any), right action of L (if any).
inline TensorProduct tensor_over(const GradedModule& R, const GradedModule& L) {
  if (!R.has_right() || !L.has_left() || !same_algebra(R.right_algebra(), L.left_algebra()))
    throw Error(ErrorCode::PreconditionViolation, "tensor_over: inner algebras differ");
  const Field& f = R.field();
  const auto& G = R.group();
  const std::size_t dr = R.dim(), dl = L.dim(), n = dr * dl;
  std::vector<GroupElt> plain_deg(n);
  for (std::size_t i = 0; i < dr; ++i)
    for (std::size_t j = 0; j < dl; ++j) plain_deg[i * dl + j] = G.mul(R.degree(i), L.degree(j));

  // relations (r·c)⊗l − r⊗(c·l) for basis r, c, l; each is homogeneous of
  // degree deg r · deg c · deg l, so they are grouped by degree
  std::vector<std::vector<Vector>> rel_by_degree(G.order());
  const auto& RA = R.right().matrices;
  const auto& LA = L.left().matrices;
  for (std::size_t c = 0; c < RA.size(); ++c)
    for (std::size_t i = 0; i < dr; ++i)
      for (std::size_t j = 0; j < dl; ++j) {
        Vector rel(n, f.zero());
        for (std::size_t i2 = 0; i2 < dr; ++i2)
          if (!RA[c](i2, i).is_zero()) rel[i2 * dl + j] += RA[c](i2, i);
        for (std::size_t j2 = 0; j2 < dl; ++j2)
          if (!LA[c](j2, j).is_zero()) rel[i * dl + j2] -= LA[c](j2, j);
        if (is_zero(rel)) continue;
        const GroupElt h = G.mul(G.mul(R.degree(i), R.right_algebra()->degree(c)), L.degree(j));
        rel_by_degree[h.index].push_back(std::move(rel));
      }

  // per degree: RREF of the relations restricted to that degree's plain indices
  std::vector<bool> is_pivot(n, false);
  std::vector<std::pair<std::size_t, Vector>> pivot_rows;  // (pivot plain index, row over plain indices)
  for (auto h : G.elements()) {
    std::vector<std::size_t> idx;
    for (std::size_t p = 0; p < n; ++p)
      if (plain_deg[p] == h) idx.push_back(p);
    const auto& rels = rel_by_degree[h.index];
    if (rels.empty() || idx.empty()) continue;
    Matrix sys(f, rels.size(), idx.size());
    for (std::size_t r = 0; r < rels.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sys(r, c) = rels[r][idx[c]];
    const auto ef = row_reduce(sys);
    for (std::size_t t = 0; t < ef.rank(); ++t) {
      Vector row(n, f.zero());
      for (std::size_t c = 0; c < idx.size(); ++c) row[idx[c]] = ef.reduced(t, c);
      is_pivot[idx[ef.pivot_cols[t]]] = true;
      pivot_rows.emplace_back(idx[ef.pivot_cols[t]], std::move(row));
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t p = 0; p < n; ++p)
    if (!is_pivot[p]) keep.push_back(p);
  std::vector<std::size_t> position(n, 0);
  for (std::size_t q = 0; q < keep.size(); ++q) position[keep[q]] = q;

  Matrix proj(f, keep.size(), n), sec(f, n, keep.size());
  for (std::size_t q = 0; q < keep.size(); ++q) {
    proj(q, keep[q]) = f.one();
    sec(keep[q], q) = f.one();
  }
  for (const auto& [p, row] : pivot_rows)
    for (std::size_t q = 0; q < keep.size(); ++q)
      if (!row[keep[q]].is_zero()) proj(q, p) = -row[keep[q]];

  std::vector<GroupElt> deg;
  for (auto p : keep) deg.push_back(plain_deg[p]);
  std::optional<Action> left, right;
  if (R.has_left()) {
    Action a{R.left_algebra(), {}};
    const Matrix id = Matrix::identity(f, dl);
    for (const auto& m : R.left().matrices) a.matrices.push_back(proj * kronecker(m, id) * sec);
    left = std::move(a);
  }
  if (L.has_right()) {
    Action a{L.right_algebra(), {}};
    const Matrix id = Matrix::identity(f, dr);
    for (const auto& m : L.right().matrices) a.matrices.push_back(proj * kronecker(id, m) * sec);
    right = std::move(a);
  }
  if (!left && !right) throw Error(ErrorCode::PreconditionViolation, "tensor_over: result would carry no action");
  return TensorProduct{GradedModule(std::move(deg), std::move(left), std::move(right)), std::move(proj), std::move(sec), dr, dl};
}

/// End_A(P)^op on the homogeneous Hom basis F_a; product a·b is the map F_b∘F_a.
/// P comes back as an (A, A')-bimodule whose right action by a is F_a.
struct EndOp {
  AlgebraPtr algebra;
  GradedModule bimodule;
  HomSpace homs;
};

inline EndOp end_op_algebra(const GradedModule& P) {
  if (!P.has_left()) throw Error(ErrorCode::KindMismatch, "end_op_algebra: P must be a left module");
  const GradedModule PL = P.as_left();
  HomSpace H = hom_graded(PL, PL, HomKind::Left);
  const Field& f = P.field();
  const std::size_t d = H.dim();
  std::vector<std::vector<Vector>> sc(d, std::vector<Vector>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) sc[a][b] = H.coordinates_or_throw(H.basis[b] * H.basis[a]);
  Vector unit = H.coordinates_or_throw(Matrix::identity(f, P.dim()));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < d; ++a) names.push_back("F" + std::to_string(a));
  auto Ap = std::make_shared<const GradedAlgebra>(P.group(), f, H.degree, std::move(sc), std::move(unit), std::move(names));
  GradedModule bimod = GradedModule::bimodule(P.left_algebra(), P.left().matrices, Ap, H.basis, P.degrees());
  return EndOp{Ap, std::move(bimod), std::move(H)};
}

/// P* = Hom_A(P, A) as an (A', A)-bimodule: (a'·φ·a)(p) = φ(p·a')·a, graded
/// by φ(P_x) ⊆ A_{xg}.
struct Dual {
  GradedModule bimodule;
  HomSpace homs;
  EndOp endop;
};

inline Dual dual_module(const EndOp& E) {
  const GradedModule P = E.bimodule.as_left();
  const AlgebraPtr& A = P.left_algebra();
  HomSpace H = hom_graded(P, regular_module(A), HomKind::Left);
  const Field& f = P.field();
  const std::size_t d = H.dim();
  std::vector<Matrix> left, right;
  for (std::size_t a = 0; a < E.algebra->dim(); ++a) {
    Matrix m(f, d, d);
    for (std::size_t b = 0; b < d; ++b) m.set_column(b, H.coordinates_or_throw(H.basis[b] * E.homs.basis[a]));
    left.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < A->dim(); ++i) {
    Matrix m(f, d, d);
    for (std::size_t b = 0; b < d; ++b) m.set_column(b, H.coordinates_or_throw(A->right_mult(i) * H.basis[b]));
    right.push_back(std::move(m));
  }
  GradedModule bimod = GradedModule::bimodule(E.algebra, std::move(left), A, std::move(right), H.degree);
  return Dual{std::move(bimod), std::move(H), E};
}

inline Dual dual_module(const GradedModule& P) { return dual_module(end_op_algebra(P)); }

}  // namespace gmorita
