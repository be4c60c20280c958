#include <gtest/gtest.h>

#include "gmorita/fixtures.hpp"
#include "oracles.hpp"

using namespace gmorita;

namespace {

Vector vec(const Field& f, std::initializer_list<long long> xs) {
  Vector v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

/// dim of {x ∈ A_g : x b = b x for every degree-1 basis vector b}, straight
/// from the structure constants.
std::size_t centralizer_dim_oracle(const GradedAlgebra& A, GroupElt g) {
  const auto one = A.basis_of_degree(A.group().identity());
  std::vector<std::size_t> unknowns = A.basis_of_degree(g);
  std::vector<std::vector<Scalar>> rows;
  for (auto b : one)
    for (std::size_t k = 0; k < A.dim(); ++k) {
      std::vector<Scalar> row;
      for (auto i : unknowns) row.push_back(A.product(i, b)[k] - A.product(b, i)[k]);
      rows.push_back(row);
    }
  return unknowns.size() - oracle::naive_rank(rows, unknowns.size());
}

}  // namespace

TEST(GradedAlgebra, FixturesPassAxioms) {
  for (const auto& A : {fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::dual_numbers()}) {
    const auto r = check_graded_algebra(*A);
    EXPECT_TRUE(r.passed()) << r.summary();
    for (const char* name : {"Associativity", "Unit", "UnitDegree", "Grading"}) EXPECT_TRUE(r.passed(name)) << name;
  }
}

TEST(GradedAlgebra, ComponentDims) {
  EXPECT_EQ(fixtures::e1()->component_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(fixtures::e2()->component_dims(), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(fixtures::e3()->component_dims(), (std::vector<std::size_t>{3, 3}));
}

TEST(GradedAlgebra, BrokenAssociativityWitness) {
  const auto A = fixtures::e2();
  std::vector<std::vector<Vector>> sc(4, std::vector<Vector>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) sc[a][b] = A->product(a, b);
  sc[2][1] = vec(A->field(), {0, 0, 0, 2});  // E21·E12 = 2·E22
  const GradedAlgebra bad(A->group(), A->field(), A->degrees(), sc, A->unit(), A->names());
  const auto r = check_graded_algebra(bad);
  ASSERT_FALSE(r.passed("Associativity"));
  EXPECT_EQ(r.find("Associativity")->witness["triple"], json::array({"E12", "E21", "E12"}));
  EXPECT_TRUE(r.passed("Unit"));
}

TEST(GradedAlgebra, UnitOutsideDegreeOneFails) {
  const Field q = Field::rationals();
  const auto A = fixtures::e1();
  std::vector<std::vector<Vector>> sc = {{A->product(0, 0), A->product(0, 1)}, {A->product(1, 0), A->product(1, 1)}};
  // regrade e_1 into degree s: products no longer respect degrees and the unit moves
  const GradedAlgebra bad(A->group(), q, {GroupElt{1}, GroupElt{1}}, sc, A->unit());
  const auto r = check_graded_algebra(bad);
  EXPECT_FALSE(r.passed("UnitDegree"));
  EXPECT_FALSE(r.passed("Grading"));
}

TEST(GradedAlgebra, CrossedProductDetection) {
  EXPECT_TRUE(find_crossed_product(fixtures::e1()));
  EXPECT_TRUE(find_crossed_product(fixtures::e2()));
  EXPECT_TRUE(find_crossed_product(fixtures::e3()));
  EXPECT_FALSE(find_crossed_product(fixtures::dual_numbers()));
  const auto A = fixtures::dual_numbers();
  try {
    make_crossed_product(A, {A->unit(), A->basis_vector(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCrossedProduct);
  }
}

TEST(GradedAlgebra, CrossedProductUnitsAreInvertible) {
  for (const auto& A : {fixtures::e1(), fixtures::e2(), fixtures::e3()}) {
    const auto cp = find_crossed_product(A);
    ASSERT_TRUE(cp);
    EXPECT_TRUE(check_crossed_product(*cp).passed());
    for (auto g : A->group().elements()) {
      EXPECT_TRUE(A->lies_in_degree(cp->unit(g), g));
      EXPECT_EQ(A->multiply(cp->unit(g), cp->unit_inverse(g)), A->unit());
    }
  }
}

TEST(GradedAlgebra, CentralizerDimsMatchOracle) {
  const std::vector<std::pair<AlgebraPtr, std::vector<std::size_t>>> cases = {
      {fixtures::e1(), {1, 1}}, {fixtures::e2(), {2, 0}}, {fixtures::e3(), {3, 1}}};
  for (const auto& [A, dims] : cases) {
    const auto C = centralizer(A, identity_component(A));
    EXPECT_EQ(C.sub->component_dims(), dims);
    for (auto g : A->group().elements()) EXPECT_EQ(C.sub->component_dims()[g.index], centralizer_dim_oracle(*A, g));
    EXPECT_TRUE(check_graded_algebra(*C.sub).passed());
  }
}

TEST(GradedAlgebra, CentralizerIdentityPartIsCenterOfB) {
  for (const auto& A : {fixtures::e1(), fixtures::e2(), fixtures::e3()}) {
    const auto B = identity_component(A);
    const auto C = centralizer(A, B);
    const auto Z = center_of(B.sub);
    const std::size_t c1 = C.sub->component_dims()[0];
    ASSERT_EQ(c1, Z.sub->dim());
    // same subspace of A: Z(B) embedded through B lies in C_A(B)
    for (std::size_t i = 0; i < Z.sub->dim(); ++i) EXPECT_TRUE(C.to_sub(B.embed(Z.embed(Z.sub->basis_vector(i)))));
  }
}

TEST(GradedAlgebra, MiyashitaActionPassesAxioms) {
  for (const auto& A : {fixtures::e1(), fixtures::e2(), fixtures::e3()}) {
    const auto cp = find_crossed_product(A);
    const auto C = centralizer(A, identity_component(A));
    const GActedAlgebra act = miyashita_action(*cp, C);
    EXPECT_EQ(act.action.size(), A->group().order());
    for (auto g : A->group().elements())
      for (std::size_t i = 0; i < C.sub->dim(); ++i) {
        // oracle: u_g c u_g⁻¹ computed by hand in A
        const Vector c = C.embed(C.sub->basis_vector(i));
        const Vector expected = A->multiply(A->multiply(cp->unit(g), c), cp->unit_inverse(g));
        EXPECT_EQ(C.embed(act.act(g, C.sub->basis_vector(i))), expected);
      }
  }
}

TEST(GradedAlgebra, MiyashitaIndependentOfUnitChoice) {
  const auto A = fixtures::e2();
  const Field& f = A->field();
  const auto C = centralizer(A, identity_component(A));
  const auto cp1 = make_crossed_product(A, {A->unit(), vec(f, {0, 1, 1, 0})});
  // u_s replaced by (5E11 - E22)(2E12 + 3E21)
  const auto cp2 = make_crossed_product(A, {A->unit(), vec(f, {0, 10, -3, 0})});
  const auto a1 = miyashita_action(cp1, C);
  const auto a2 = miyashita_action(cp2, C);
  for (std::size_t g = 0; g < 2; ++g) EXPECT_EQ(a1.action[g], a2.action[g]);
}

TEST(GradedAlgebra, SubalgebraMustBeClosed) {
  const auto A = fixtures::e2();
  try {
    make_subalgebra(A, {A->basis_vector(0), A->basis_vector(1)}, {GroupElt{0}, GroupElt{1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
}

TEST(GradedAlgebra, GroupAlgebraGrading) {
  const auto A = fixtures::e3();
  EXPECT_EQ(A->name(3), "(12)");
  const Vector x = A->multiply(A->basis_vector(3), A->basis_vector(4));
  EXPECT_EQ(x, A->basis_vector(2));
  EXPECT_EQ(identity_component(A).sub->dim(), 3u);
}

TEST(GradedAlgebra, HomChecks) {
  const auto A = fixtures::e1();
  const Field& f = A->field();
  Matrix flip = Matrix::identity(f, 2);
  flip(1, 1) = f.from_int(-1);
  EXPECT_TRUE(check_algebra_hom({A, A, flip}, true).passed());
  Matrix scale = Matrix::identity(f, 2);
  scale(1, 1) = f.from_int(2);
  EXPECT_FALSE(check_algebra_hom({A, A, scale}, true).passed("Multiplicative"));
  Matrix swap(f, 2, 2);
  swap(0, 1) = swap(1, 0) = f.one();
  const auto r = check_algebra_hom({A, A, swap}, true);
  EXPECT_FALSE(r.passed("Unital"));
  EXPECT_FALSE(r.passed("Graded"));
}
