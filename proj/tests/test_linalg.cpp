#include <catch_amalgamated.hpp>

#include "congru/factor.hpp"
#include "congru/linalg.hpp"
#include "congru/random.hpp"
#include "support.hpp"

using namespace congru;
using congru::testing::leibniz_det;
using congru::testing::minor_rank;

TEST_CASE("rank_rref on the zero matrix, the identity and J_4(0)") {
  Rationals q;
  auto z = Matrix<Rationals>(q, 2, 3);
  auto rz = rank_rref(z);
  CHECK(rz.rank == 0);
  CHECK(rz.rref == z);

  auto id = Matrix<Rationals>::identity(q, 4);
  auto ri = rank_rref(id);
  CHECK(ri.rank == 4);
  CHECK(ri.rref == id);

  auto j4 = jordan_block(q, 4, q.zero());
  CHECK(rank_rref(j4).rank == 3);
}

TEST_CASE("rank_rref transform reproduces the rref and is invertible") {
  GaloisField f(5);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    auto m = random_matrix(f, 1 + rng() % 4, 1 + rng() % 4, rng);
    if (i % 3 == 0) m.set_block(0, 0, Matrix<GaloisField>(f, 1, m.cols()));
    auto r = rank_rref(m);
    REQUIRE(r.transform * m == r.rref);
    REQUIRE(is_invertible(r.transform));
    REQUIRE(r.rank == r.pivot_cols.size());
  }
}

TEST_CASE("rank agrees with the minor-expansion oracle up to 4x4") {
  GaloisField f3(3);
  Rationals q;
  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(f3, r, c, rng);
    REQUIRE(rank(m) == minor_rank(m));
    REQUIRE(rank_rref(m).rank == minor_rank(m));
    auto mq = random_matrix(q, r, c, rng);
    if (i % 2) mq.set_block(0, 0, mq.block(r - 1, 0, 1, c));
    REQUIRE(rank(mq) == minor_rank(mq));
  }
}

TEST_CASE("mat_inverse examples") {
  Rationals q;
  GaloisField f5(5);
  CHECK(inverse(Matrix<Rationals>::identity(q, 3)) == Matrix<Rationals>::identity(q, 3));
  CHECK(inverse(Matrix<GaloisField>::from_ints(f5, {{2, 0}, {0, 3}})) ==
        Matrix<GaloisField>::from_ints(f5, {{3, 0}, {0, 2}}));
  auto j2 = jordan_block(q, 2, q.zero());
  CHECK_FALSE(try_inverse(j2).has_value());
  try {
    inverse(j2);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
}

TEST_CASE("inverse is an involution and M * M^-1 = I") {
  Rationals q;
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto m = random_invertible(q, 1 + rng() % 4, rng);
    auto inv = inverse(m);
    REQUIRE(m * inv == Matrix<Rationals>::identity(q, m.rows()));
    REQUIRE(inverse(inv) == m);
  }
}

TEST_CASE("nullspace and solve") {
  GaloisField f(7);
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    auto m = random_matrix(f, 1 + rng() % 4, 1 + rng() % 5, rng);
    auto k = nullspace(m);
    REQUIRE(k.cols() == m.cols() - rank(m));
    REQUIRE((m * k).is_zero());
    REQUIRE(rank(k) == k.cols());
    auto x = random_matrix(f, m.cols(), 1, rng);
    auto b = m * x;
    auto s = solve(m, b);
    REQUIRE(s.has_value());
    REQUIRE(m * *s == b);
  }
  auto inconsistent = solve(Matrix<GaloisField>::from_ints(f, {{1, 1}, {1, 1}}),
                            Matrix<GaloisField>::from_ints(f, {{0}, {1}}));
  REQUIRE_FALSE(inconsistent.has_value());
}

TEST_CASE("charpoly matches the Leibniz determinant of xI - M") {
  GaloisField f(7);
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + rng() % 5;
    auto m = random_matrix(f, n, n, rng);
    auto p = charpoly(m);
    REQUIRE(p.degree() == static_cast<long>(n));
    // Evaluate det(aI - M) at every field element.
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      auto shifted = Matrix<GaloisField>::identity(f, n).scaled(f.element_at(a)) - m;
      REQUIRE(f.equal(p.eval(f.element_at(a)), leibniz_det(shifted)));
    }
  }
}

TEST_CASE("charpoly_factor examples") {
  Rationals q;
  GaloisField f3(3);
  using QP = Polynomial<Rationals>;
  using FP = Polynomial<GaloisField>;

  auto j2 = charpoly_factor(jordan_block(q, 2, q.zero()));
  REQUIRE(j2.size() == 1);
  CHECK(j2[0].first == QP::x(q));
  CHECK(j2[0].second == 2);

  auto d = charpoly_factor(Matrix<Rationals>::from_ints(q, {{1, 0}, {0, 2}}));
  REQUIRE(d.size() == 2);
  CHECK(d[0].first == QP::linear(q, q.from_int(1)));
  CHECK(d[1].first == QP::linear(q, q.from_int(2)));

  // x^2 + 1 has no root mod 3: check by exhaustion, then require one irreducible factor.
  auto x2p1 = FP::from_ints(f3, {1, 0, 1});
  for (std::uint64_t a = 0; a < 3; ++a) REQUIRE_FALSE(f3.is_zero(x2p1.eval(f3.element_at(a))));
  auto c = charpoly_factor(companion(x2p1));
  REQUIRE(c.size() == 1);
  CHECK(c[0].first == x2p1);
  CHECK(c[0].second == 1);
}

TEST_CASE("factorizations multiply back to the characteristic polynomial") {
  Rng rng(6);
  GaloisField f5(5);
  GaloisField f9(FieldSpec::finite(3, 2, {1, 0, 1}));
  Rationals q;
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + rng() % 6;
    auto m5 = random_matrix(f5, n, n, rng);
    REQUIRE(expand(f5, charpoly_factor(m5)) == charpoly(m5));
    auto m9 = random_matrix(f9, n, n, rng);
    REQUIRE(expand(f9, charpoly_factor(m9)) == charpoly(m9));
    auto mq = random_matrix(q, std::min<std::size_t>(n, 5), std::min<std::size_t>(n, 5), rng);
    REQUIRE(expand(q, charpoly_factor(mq)) == charpoly(mq));
  }
}

TEST_CASE("finite-field factors are irreducible: no proper factor of degree <= d/2") {
  GaloisField f3(3);
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    auto m = random_matrix(f3, 6, 6, rng);
    for (const auto& [p, e] : charpoly_factor(m)) {
      REQUIRE(p.is_monic());
      // Brute force: try every monic polynomial of degree 1..deg/2.
      for (long d = 1; 2 * d <= p.degree(); ++d) {
        std::uint64_t count = 1;
        for (long k = 0; k < d; ++k) count *= 3;
        for (std::uint64_t code = 0; code < count; ++code) {
          std::vector<GfElem> c;
          std::uint64_t v = code;
          for (long k = 0; k < d; ++k) {
            c.push_back(f3.element_at(v % 3));
            v /= 3;
          }
          c.push_back(f3.one());
          REQUIRE_FALSE(Polynomial<GaloisField>(f3, c).divides(p));
        }
      }
    }
  }
}
