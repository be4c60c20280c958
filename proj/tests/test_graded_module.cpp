#include <gtest/gtest.h>

#include <random>

#include "gmorita/fixtures.hpp"
#include "oracles.hpp"

using namespace gmorita;

namespace {

const GroupElt s{1};

struct Named {
  std::string name;
  GradedModule module;
};

/// Every left-module fixture, grouped by algebra.
std::vector<std::vector<Named>> fixture_families() {
  const auto e1 = fixtures::e1();
  const auto e2 = fixtures::e2();
  const auto e3 = fixtures::e3();
  const auto R1 = regular_module(e1);
  const auto P3 = fixtures::p3(e3);
  return {
      {{"E1.A", R1}, {"E1.A(s)", suspend(R1, s)}, {"E1.A+A(s)", direct_sum(R1, suspend(R1, s))}, {"E1.0", zero_module(e1)}},
      {{"E2.A", regular_module(e2)}, {"E2.column", fixtures::e2_column_module(e2)}},
      {{"E3.A", regular_module(e3)}, {"E3.P3", P3}, {"E3.P3(s)", suspend(P3, s)}},
  };
}

}  // namespace

TEST(GradedModule, FixturesPassAxioms) {
  for (const auto& fam : fixture_families())
    for (const auto& [name, M] : fam) EXPECT_TRUE(check_graded_module(M).passed()) << name << "\n" << check_graded_module(M).summary();
  const auto B = identity_component(fixtures::e3());
  EXPECT_TRUE(check_graded_module(fixtures::u_chi(B.sub)).passed());
  EXPECT_TRUE(check_graded_module(regular_bimodule(fixtures::e2())).passed());
  EXPECT_TRUE(check_graded_module(regular_right_module(fixtures::e3())).passed());
}

TEST(GradedModule, BrokenActionIsReported) {
  const auto A = fixtures::e1();
  const auto R = regular_module(A);
  Action act = R.left();
  act.matrices[1] = A->field().from_int(2) * Matrix::identity(A->field(), 2);  // e_s acting as 2 breaks grading and e_s² = 1
  const GradedModule bad(R.degrees(), act, std::nullopt);
  const auto r = check_graded_module(bad);
  EXPECT_FALSE(r.passed("LeftGrading"));
  EXPECT_FALSE(r.passed("LeftMultiplicative"));
  EXPECT_TRUE(r.passed("LeftUnit"));
}

TEST(GradedModule, SuspensionComposes) {
  const auto A = fixtures::e3();
  const auto P3 = fixtures::p3(A);
  const FiniteGroup& G = A->group();
  for (auto g : G.elements())
    for (auto h : G.elements()) {
      EXPECT_EQ(suspend(suspend(P3, g), h).degrees(), suspend(P3, G.mul(h, g)).degrees());
      EXPECT_TRUE(check_graded_module(suspend(P3, g)).passed());
    }
  // right modules compose the same way
  const auto R = regular_right_module(A);
  for (auto g : G.elements())
    for (auto h : G.elements()) EXPECT_EQ(suspend(suspend(R, g), h).degrees(), suspend(R, G.mul(h, g)).degrees());
}

TEST(GradedModule, SuspendingABimoduleThrows) {
  try {
    suspend(regular_bimodule(fixtures::e1()), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(GradedModule, HomDimsMatchBruteForce) {
  for (const auto& fam : fixture_families())
    for (const auto& [mn, M] : fam)
      for (const auto& [nn, N] : fam) {
        const HomSpace H = hom_graded(M, N);
        const auto dims = H.component_dims(M.group());
        std::size_t total = 0;
        for (auto g : M.group().elements()) {
          EXPECT_EQ(dims[g.index], oracle::graded_hom_dim(M, N, HomKind::Left, g)) << mn << " -> " << nn << " at " << M.group().label(g);
          total += dims[g.index];
        }
        EXPECT_EQ(total, H.dim());
        EXPECT_EQ(total, oracle::ungraded_hom_dim(M, N, HomKind::Left)) << mn << " -> " << nn;
      }
}

TEST(GradedModule, HomBasisIsHomogeneousAndLinear) {
  const auto A = fixtures::e3();
  const auto M = fixtures::p3(A);
  const auto N = regular_module(A);
  const HomSpace H = hom_graded(M, N);
  const FiniteGroup& G = A->group();
  for (std::size_t b = 0; b < H.dim(); ++b) {
    const Matrix& F = H.basis[b];
    for (std::size_t a = 0; a < A->dim(); ++a) EXPECT_EQ(F * M.left().matrices[a], N.left().matrices[a] * F);
    for (std::size_t c = 0; c < M.dim(); ++c)
      for (std::size_t r = 0; r < N.dim(); ++r)
        if (!F(r, c).is_zero()) { EXPECT_EQ(N.degree(r), hom_target_degree(G, HomKind::Left, M.degree(c), H.degree[b])); }
  }
}

TEST(GradedModule, RightAndBimoduleHomsMatchBruteForce) {
  for (const auto& A : {fixtures::e1(), fixtures::e2(), fixtures::e3()}) {
    const auto R = regular_right_module(A);
    const auto Bi = regular_bimodule(A);
    for (auto g : A->group().elements()) {
      EXPECT_EQ(hom_component(R, R, HomKind::Right, g).size(), oracle::graded_hom_dim(R, R, HomKind::Right, g));
      EXPECT_EQ(hom_component(Bi, Bi, HomKind::Both, g).size(), oracle::graded_hom_dim(Bi, Bi, HomKind::Both, g));
    }
  }
}

TEST(GradedModule, HomCoordinatesRoundTrip) {
  const auto A = fixtures::e2();
  const auto R = regular_module(A);
  const HomSpace H = hom_graded(R, R);
  ASSERT_EQ(H.dim(), 4u);
  for (std::size_t b = 0; b < H.dim(); ++b) {
    const auto c = H.coordinates(H.basis[b]);
    ASSERT_TRUE(c);
    EXPECT_EQ(H.element(*c), H.basis[b]);
  }
  EXPECT_FALSE(H.coordinates(Matrix::from_rows(A->field(), {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}})));
}

TEST(GradedModule, Stabilizers) {
  EXPECT_TRUE(is_g_invariant(regular_module(fixtures::e1())));
  EXPECT_TRUE(is_g_invariant(regular_module(fixtures::e2())));
  EXPECT_TRUE(is_g_invariant(regular_module(fixtures::e3())));
  const auto e1 = fixtures::e1();
  EXPECT_TRUE(is_g_invariant(direct_sum(regular_module(e1), suspend(regular_module(e1), s))));
  const Subgroup g3 = stabilizer(fixtures::p3(fixtures::e3()));
  EXPECT_TRUE(g3.is_trivial());
  EXPECT_EQ(g3.labels(), std::vector<std::string>{"1"});
  EXPECT_TRUE(stabilizer(fixtures::e2_column_module(fixtures::e2())).is_trivial());
}

TEST(GradedModule, IsoDetection) {
  std::mt19937 rng(21);
  const auto A = fixtures::e2();
  const auto M = regular_module(A);
  const auto T = oracle::random_graded_change(rng, A->field(), M.degrees());
  const auto N = oracle::change_basis(M, T);
  ASSERT_TRUE(check_graded_module(N).passed());
  const auto iso = is_graded_iso(M, N);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(is_invertible(*iso));
  const auto col = fixtures::e2_column_module(A);
  EXPECT_FALSE(is_graded_iso(col, suspend(col, s)));
  EXPECT_TRUE(is_graded_iso(direct_sum(col, suspend(col, s)), M));
  EXPECT_FALSE(is_graded_iso(col, M));
}

TEST(GradedModule, InducedModule) {
  const auto A = fixtures::e3();
  const auto P3 = fixtures::p3(A);
  EXPECT_EQ(P3.dim(), 2u);
  EXPECT_EQ(P3.component_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(check_graded_module(P3).passed());
  // (123) acts on the degree-1 line by 2
  const auto one = P3.basis_of_degree(A->group().identity());
  ASSERT_EQ(one.size(), 1u);
  const Vector v = P3.left().matrices[1].column(one[0]);
  EXPECT_EQ(v[one[0]], A->field().from_int(2));
}

TEST(GradedModule, TensorWithRegularIsIdentity) {
  for (const auto& fam : fixture_families())
    for (const auto& [name, M] : fam) {
      const auto A = M.left_algebra();
      const TensorProduct T = tensor_over(regular_bimodule(A), M);
      EXPECT_EQ(T.module.dim(), M.dim()) << name;
      EXPECT_TRUE(check_graded_module(T.module).passed()) << name;
      EXPECT_TRUE(is_graded_iso(T.module.as_left(), M)) << name;
    }
}

TEST(GradedModule, TensorOverIdentityComponent) {
  const auto A = fixtures::e1();
  const auto B = identity_component(A);
  // A ⊗_B A with B = k
  std::vector<Matrix> right_b, left_b;
  for (std::size_t i = 0; i < B.sub->dim(); ++i) {
    right_b.push_back(regular_right_module(A).right_action(B.embed(B.sub->basis_vector(i))));
    left_b.push_back(regular_module(A).left_action(B.embed(B.sub->basis_vector(i))));
  }
  const GradedModule AB(A->degrees(), regular_module(A).left(), Action{B.sub, right_b});
  const GradedModule BA(A->degrees(), Action{B.sub, left_b}, std::nullopt);
  const TensorProduct T = tensor_over(AB, BA);
  EXPECT_EQ(T.module.dim(), 4u);
  EXPECT_EQ(T.module.component_dims(), (std::vector<std::size_t>{2, 2}));
}

TEST(GradedModule, TensorRelationsAreBalanced) {
  const auto A = fixtures::e2();
  const auto col = fixtures::e2_column_module(A);
  const auto R = regular_bimodule(A);
  const TensorProduct T = tensor_over(R, col);
  EXPECT_EQ(T.module.dim(), 2u);
  for (std::size_t r = 0; r < A->dim(); ++r)
    for (std::size_t a = 0; a < A->dim(); ++a)
      for (std::size_t l = 0; l < col.dim(); ++l) {
        // (r·a) ⊗ l = r ⊗ (a·l)
        Vector lhs = zero_vector(A->field(), T.module.dim());
        Vector rhs = lhs;
        const Vector ra = A->product(r, a);
        const Vector al = col.left().matrices[a].column(l);
        for (std::size_t i = 0; i < A->dim(); ++i)
          if (!ra[i].is_zero()) lhs = lhs + ra[i] * T.pure(A->basis_vector(i), unit_vector(A->field(), col.dim(), l));
        for (std::size_t j = 0; j < col.dim(); ++j)
          if (!al[j].is_zero()) rhs = rhs + al[j] * T.pure(A->basis_vector(r), unit_vector(A->field(), col.dim(), j));
        EXPECT_EQ(lhs, rhs);
      }
}

TEST(GradedModule, EndOpAndDual) {
  const auto e1 = fixtures::e1();
  const auto P = direct_sum(regular_module(e1), suspend(regular_module(e1), s));
  const EndOp E = end_op_algebra(P);
  EXPECT_EQ(E.algebra->dim(), 8u);
  EXPECT_EQ(E.algebra->component_dims(), (std::vector<std::size_t>{4, 4}));
  EXPECT_TRUE(check_graded_algebra(*E.algebra).passed());
  EXPECT_TRUE(check_graded_module(E.bimodule).passed());
  EXPECT_TRUE(find_crossed_product(E.algebra));
  const Dual D = dual_module(E);
  EXPECT_EQ(D.bimodule.component_dims(), (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(check_graded_module(D.bimodule).passed());

  const EndOp E3 = end_op_algebra(fixtures::p3(fixtures::e3()));
  EXPECT_EQ(E3.algebra->component_dims(), (std::vector<std::size_t>{1, 0}));
  EXPECT_FALSE(find_crossed_product(E3.algebra));
  EXPECT_EQ(dual_module(E3).bimodule.dim(), 2u);
}

TEST(GradedModule, EndOpProductIsReversedComposition) {
  const auto A = fixtures::e2();
  const auto P = fixtures::e2_column_module(A);
  const auto P2 = direct_sum(P, suspend(P, s));
  const EndOp E = end_op_algebra(P2);
  for (std::size_t a = 0; a < E.algebra->dim(); ++a)
    for (std::size_t b = 0; b < E.algebra->dim(); ++b) {
      const Matrix lhs = E.homs.element(E.algebra->product(a, b));
      EXPECT_EQ(lhs, E.homs.basis[b] * E.homs.basis[a]);
    }
}

TEST(GradedModule, DirectSumRejectsMixedKinds) {
  const auto A = fixtures::e1();
  try {
    direct_sum(regular_module(A), regular_right_module(A));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}
