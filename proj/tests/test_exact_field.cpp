#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace gmorita;

TEST(Field, ParseNames) {
  EXPECT_TRUE(Field::parse("Q").is_rational());
  EXPECT_EQ(Field::parse("Fp:7").modulus(), 7u);
  EXPECT_EQ(Field::parse("Fp:7").name(), "Fp:7");
  EXPECT_THROW(Field::parse("Fp:8"), Error);
  EXPECT_THROW(Field::parse("R"), Error);
}

TEST(Scalar, RationalArithmetic) {
  const Field q = Field::rationals();
  const Scalar half = Scalar::parse(q, "1/2");
  const Scalar third = Scalar::parse(q, "-1/3");
  EXPECT_EQ(half + third, Scalar::parse(q, "1/6"));
  EXPECT_EQ(half * third, Scalar::parse(q, "-1/6"));
  EXPECT_EQ(half / third, Scalar::parse(q, "-3/2"));
  EXPECT_EQ(Scalar::parse(q, "2/4"), half);
  EXPECT_EQ(half.to_string(), "1/2");
  EXPECT_EQ(q.from_int(3).to_short_string(), "3");
  EXPECT_THROW(q.zero().inverse(), Error);
}

TEST(Scalar, PrimeArithmetic) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(f7.from_int(3) * f7.from_int(5), f7.one());
  EXPECT_EQ(f7.from_int(-1), f7.from_int(6));
  EXPECT_EQ(f7.from_int(2).inverse(), f7.from_int(4));
  EXPECT_EQ(Scalar::parse(f7, "3 mod 7"), f7.from_int(3));
  EXPECT_EQ(Scalar::parse(f7, "1/2"), f7.from_int(4));
  EXPECT_EQ(f7.from_int(3).to_string(), "3 mod 7");
}

TEST(Scalar, ParseErrors) {
  const Field f7 = Field::prime(7);
  try {
    Scalar::parse(f7, "1 mod 5");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScalarKindMismatch);
  }
  try {
    Scalar::parse(Field::rationals(), "1/0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Scalar, MixedFieldsRejected) {
  const Scalar a = Field::prime(5).one();
  const Scalar b = Field::prime(7).one();
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(a * Field::rationals().one(), Error);
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  std::mt19937 rng(11);
  for (const Field f : {Field::rationals(), Field::prime(5), Field::prime(2)})
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + t % 4;
      const Matrix m = oracle::random_matrix(rng, f, n, n);
      EXPECT_EQ(determinant(m), oracle::leibniz_det(m)) << m.to_string();
      EXPECT_EQ(is_invertible(m), !oracle::leibniz_det(m).is_zero());
    }
}

TEST(Matrix, SolveMatchesCramer) {
  std::mt19937 rng(12);
  for (const Field f : {Field::rationals(), Field::prime(7)})
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + t % 4;
      const Matrix a = oracle::random_matrix(rng, f, n, n);
      Vector b;
      for (std::size_t i = 0; i < n; ++i) b.push_back(oracle::random_scalar(rng, f));
      const auto expected = oracle::cramer_solve(a, b);
      if (!expected) continue;
      const auto got = solve(a, b);
      ASSERT_TRUE(got.has_value());
      EXPECT_EQ(*got, *expected);
    }
}

TEST(Matrix, RankAndKernel) {
  std::mt19937 rng(13);
  for (const Field f : {Field::rationals(), Field::prime(3)})
    for (int t = 0; t < 40; ++t) {
      const std::size_t r = 1 + t % 5, c = 1 + (t / 5) % 5;
      Matrix m = oracle::random_matrix(rng, f, r, c, -1, 1);
      const std::size_t rk = rank(m);
      EXPECT_EQ(rk, oracle::naive_rank(m));
      const auto ker = kernel_vectors(m);
      EXPECT_EQ(ker.size(), c - rk);
      for (const auto& v : ker) EXPECT_TRUE(is_zero(m * v));
    }
}

TEST(Matrix, InverseRoundTrip) {
  const Field q = Field::rationals();
  const Matrix m = Matrix::from_rows(q, {{2, 1}, {7, 4}});
  const auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, Matrix::identity(q, 2));
  EXPECT_FALSE(inverse(Matrix::from_rows(q, {{1, 2}, {2, 4}})));
}

TEST(Matrix, ShapeMismatchThrows) {
  const Field q = Field::rationals();
  EXPECT_THROW(Matrix(q, 2, 3) * Matrix(q, 2, 3), Error);
  EXPECT_THROW(Matrix(q, 2, 3) + Matrix(q, 3, 2), Error);
}

TEST(GenericInvertible, AgreesWithExhaustiveSearch) {
  std::mt19937 rng(14);
  int with_witness = 0, without = 0;
  for (const std::uint32_t p : {2u, 3u}) {
    const Field f = Field::prime(p);
    for (int t = 0; t < 120; ++t) {
      const std::size_t n = 1 + t % 3, k = 1 + (t / 3) % 3;
      std::vector<Matrix> basis;
      for (std::size_t i = 0; i < k; ++i) {
        Matrix m = oracle::random_matrix(rng, f, n, n, 0, static_cast<int>(p) - 1);
        // sparsify so singular spans are common
        for (std::size_t r = 0; r < n; ++r)
          if (rng() % 2) m(r, rng() % n) = f.zero();
        basis.push_back(m);
      }
      const bool expected = oracle::span_has_invertible(f, basis);
      const auto got = generic_invertible_element(basis);
      ASSERT_EQ(got.has_value(), expected);
      if (got) {
        EXPECT_FALSE(oracle::leibniz_det(*got).is_zero());
        EXPECT_TRUE(oracle::in_span(f, basis, *got));
        ++with_witness;
      } else {
        ++without;
      }
    }
  }
  EXPECT_GT(with_witness, 0);
  EXPECT_GT(without, 0);
}

TEST(GenericInvertible, NeedsPointOffTheProbeGrid) {
  // t0·diag(1,0,1) + t1·diag(0,1,-1) has determinant t0·t1·(t0 - t1), which
  // vanishes on {0,1}² but not at (1, 2) over F3.
  const Field f = Field::prime(3);
  const Matrix a = Matrix::from_rows(f, {{1, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  const Matrix b = Matrix::from_rows(f, {{0, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  const auto m = generic_invertible_element({a, b});
  ASSERT_TRUE(m);
  EXPECT_FALSE(oracle::leibniz_det(*m).is_zero());
  EXPECT_TRUE(oracle::in_span(f, {a, b}, *m));
  // over F2 the same span has no invertible element at all
  const Field f2 = Field::prime(2);
  const Matrix a2 = Matrix::from_rows(f2, {{1, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  const Matrix b2 = Matrix::from_rows(f2, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_FALSE(generic_invertible_element({a2, b2}));
  EXPECT_FALSE(oracle::span_has_invertible(f2, {a2, b2}));
}

TEST(GenericInvertible, SingularSpan) {
  const Field q = Field::rationals();
  const Matrix e11 = Matrix::from_rows(q, {{1, 0}, {0, 0}});
  const Matrix e12 = Matrix::from_rows(q, {{0, 1}, {0, 0}});
  EXPECT_FALSE(generic_invertible_element({e11, e12}));
}
