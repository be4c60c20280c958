#pragma once

#include <array>
#include <vector>

#include "gmorita/graded_module.hpp"

namespace gmorita::fixtures {

inline FiniteGroup c2() { return cyclic_group(2, "s"); }

/// S3 on {0,1,2}; elements id, (123), (132), (12), (13), (23); product στ = σ∘τ.
inline FiniteGroup s3() {
  using Perm = std::array<int, 3>;
  const std::vector<Perm> perms = {Perm{0, 1, 2}, Perm{1, 2, 0}, Perm{2, 0, 1}, Perm{1, 0, 2}, Perm{2, 1, 0}, Perm{0, 2, 1}};
  std::vector<std::vector<std::uint32_t>> table(6, std::vector<std::uint32_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      Perm c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      table[a][b] = static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup(table, {"()", "(123)", "(132)", "(12)", "(13)", "(23)"});
}

inline std::vector<GroupElt> sign_grading() {
  return {GroupElt{0}, GroupElt{0}, GroupElt{0}, GroupElt{1}, GroupElt{1}, GroupElt{1}};
}

/// Group algebra of C2, basis e_1, e_s.
inline AlgebraPtr e1(const Field& f = Field::rationals()) {
  return graded_group_algebra(f, c2(), c2(), {GroupElt{0}, GroupElt{1}});
}

/// 2×2 matrices, basis E11, E12, E21, E22 with off-diagonal units in degree s.
inline AlgebraPtr e2(const Field& f = Field::rationals()) {
  const std::vector<std::string> names = {"E11", "E12", "E21", "E22"};
  std::vector<std::vector<Vector>> sc(4, std::vector<Vector>(4, zero_vector(f, 4)));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = a / 2, j = a % 2, k = b / 2, l = b % 2;
      if (j == k) sc[a][b] = unit_vector(f, 4, 2 * i + l);
    }
  Vector unit = zero_vector(f, 4);
  unit[0] = unit[3] = f.one();
  return std::make_shared<const GradedAlgebra>(c2(), f, std::vector<GroupElt>{{0}, {1}, {1}, {0}}, std::move(sc), std::move(unit), names);
}

/// F7[S3] graded by the sign map.
inline AlgebraPtr e3() { return graded_group_algebra(Field::prime(7), s3(), c2(), sign_grading()); }

/// k[ε]/(ε²) with deg ε = s: graded, but A_s has no unit.
inline AlgebraPtr dual_numbers(const Field& f = Field::rationals()) {
  std::vector<std::vector<Vector>> sc = {{unit_vector(f, 2, 0), unit_vector(f, 2, 1)}, {unit_vector(f, 2, 1), zero_vector(f, 2)}};
  return std::make_shared<const GradedAlgebra>(c2(), f, std::vector<GroupElt>{{0}, {1}}, std::move(sc), unit_vector(f, 2, 0),
                                               std::vector<std::string>{"1", "eps"});
}

/// Column vectors k² for E2 with e1 in degree 1 and e2 in degree s.
inline GradedModule e2_column_module(const AlgebraPtr& A) {
  const Field& f = A->field();
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < 4; ++a) {
    Matrix m(f, 2, 2);
    m(a / 2, a % 2) = f.one();
    act.push_back(std::move(m));
  }
  return GradedModule::left_module(A, {GroupElt{0}, GroupElt{1}}, std::move(act));
}

/// One-dimensional F7[A3]-module where (123) acts by 2 and (132) by 4.
inline GradedModule u_chi(const AlgebraPtr& B) {
  const Field& f = B->field();
  std::vector<Matrix> act;
  for (long long v : {1, 2, 4}) {
    Matrix m(f, 1, 1);
    m(0, 0) = f.from_int(v);
    act.push_back(std::move(m));
  }
  return GradedModule::left_module(B, {GroupElt{0}}, std::move(act));
}

/// Induced module F7[S3] ⊗_{F7[A3]} U_χ.
inline GradedModule p3(const AlgebraPtr& A) {
  const auto B = identity_component(A);
  const auto cp = find_crossed_product(A);
  if (!cp) throw Error(ErrorCode::NotCrossedProduct, "p3: no crossed product");
  return induce(B, *cp, u_chi(B.sub));
}

}  // namespace gmorita::fixtures
