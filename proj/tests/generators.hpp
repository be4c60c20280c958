#pragma once

// Seeded generators of algebras, modules and bimodules over C for the
// property tests and the acceptance run.

#include <random>
#include <string>

#include "gmorita/fixtures.hpp"
#include "oracles.hpp"

namespace gen {

using namespace gmorita;

/// A written in the homogeneous basis given by the columns of T.
inline AlgebraPtr rebase(const AlgebraPtr& A, const Matrix& T) {
  const Matrix Ti = *inverse(T);
  const std::size_t n = A->dim();
  std::vector<std::vector<Vector>> sc(n, std::vector<Vector>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) sc[a][b] = Ti * A->multiply(T.column(a), T.column(b));
  return std::make_shared<const GradedAlgebra>(A->group(), A->field(), A->degrees(), std::move(sc), Ti * A->unit());
}

/// Random module over A: sums of suspended regular modules in a random graded basis.
inline GradedModule random_module(std::mt19937& rng, const AlgebraPtr& A) {
  const auto& G = A->group();
  GradedModule M = suspend(regular_module(A), GroupElt{static_cast<std::uint32_t>(rng() % G.order())});
  const int extra = static_cast<int>(rng() % 2);
  for (int i = 0; i < extra; ++i) M = direct_sum(M, suspend(regular_module(A), GroupElt{static_cast<std::uint32_t>(rng() % G.order())}));
  return oracle::change_basis(M, oracle::random_graded_change(rng, A->field(), M.degrees()));
}

/// Left action precomposed with the algebra automorphism σ (columns σ(e_i)).
inline GradedModule twist_left(const GradedModule& M, const Matrix& sigma) {
  Action a = M.left();
  for (std::size_t i = 0; i < a.matrices.size(); ++i) a.matrices[i] = M.left_action(sigma.column(i));
  return GradedModule(M.degrees(), a, M.right());
}

/// Conjugation x ↦ u x u⁻¹ as a matrix.
inline Matrix inner(const AlgebraPtr& A, const Vector& u) {
  const Vector ui = *inverse_element(*A, u);
  return A->left_mult(u) * A->right_mult(ui);
}

struct BimoduleFamily {
  AlgebraOverC X;
  AlgebraOverC Xp;
  std::vector<GradedModule> seeds;
  std::vector<Matrix> left_automorphisms;
};

inline std::vector<BimoduleFamily> families() {
  std::vector<BimoduleFamily> out;
  for (const auto& A : {fixtures::e1(), fixtures::e2(), fixtures::e3()}) {
    const auto X = canonical_over_c(A);
    const Matrix conj_s = inner(A, X.cp.unit(GroupElt{1}));
    Matrix flip = Matrix::identity(A->field(), A->dim());
    for (std::size_t i = 0; i < A->dim(); ++i)
      if (A->degree(i) != A->group().identity()) flip(i, i) = A->field().from_int(-1);
    out.push_back({X, X, {regular_bimodule(A)}, {conj_s, flip}});
  }
  const auto e1 = fixtures::e1();
  const auto P = direct_sum(regular_module(e1), suspend(regular_module(e1), GroupElt{1}));
  const MoritaContext ctx = build_canonical_context(canonical_over_c(e1), P);
  out.push_back({*ctx.over_A, *ctx.over_Aprime, {ctx.M}, {}});
  return out;
}


struct Instance {
  std::string label;
  BimoduleOverC bimodule;
};

/// Bimodules over C: seeds with random left twists, direct sums and graded
/// basis changes. Twists by automorphisms moving C are the engineered failures.
inline std::vector<Instance> condition_three_instances(std::mt19937& rng, int per_family) {
  std::vector<Instance> out;
  int fam_index = 0;
  for (const auto& fam : families()) {
    for (int t = 0; t < per_family; ++t) {
      GradedModule M = fam.seeds[rng() % fam.seeds.size()];
      const int op = t % 4;
      std::string label = "family" + std::to_string(fam_index) + ".seed";
      if (op >= 1 && !fam.left_automorphisms.empty()) {
        const std::size_t k = rng() % fam.left_automorphisms.size();
        M = twist_left(M, fam.left_automorphisms[k]);
        label += ".twist" + std::to_string(k);
      }
      if (op >= 2) {
        M = direct_sum(M, fam.seeds[rng() % fam.seeds.size()]);
        label += ".sum";
      }
      M = oracle::change_basis(M, oracle::random_graded_change(rng, M.field(), M.degrees()));
      out.push_back({label + ".rebased", BimoduleOverC{fam.X, fam.Xp, M}});
    }
    ++fam_index;
  }
  return out;
}

}  // namespace gen
