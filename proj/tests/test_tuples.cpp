#include <catch_amalgamated.hpp>

#include "congru/gadgets.hpp"
#include "congru/random.hpp"
#include "congru/tuples.hpp"
#include "support.hpp"

using namespace congru;

namespace {

using QM = Matrix<Rationals>;
using FM = Matrix<GaloisField>;

template <Field F>
std::vector<typename F::Element> signs(const F& f, std::initializer_list<int> s) {
  std::vector<typename F::Element> out;
  for (int v : s) out.push_back(f.from_int(v));
  return out;
}

}  // namespace

TEST_CASE("vee_lift examples") {
  Rationals q;
  auto k = vee_lift(MatrixTuple<Rationals>({QM::identity(q, 1)}), q.from_int(-1));
  CHECK(k[0] == QM::from_ints(q, {{0, 1}, {-1, 0}}));

  auto fg = vee_lift(MatrixTuple<Rationals>({QM(q, 0, 1), QM(q, 0, 1)}), q.from_int(-1));
  CHECK(fg[0] == QM(q, 1, 1));
  CHECK(fg[1] == QM(q, 1, 1));

  auto a = QM::from_ints(q, {{1, 2, 3}, {4, 5, 6}});
  auto s = vee_lift(MatrixTuple<Rationals>({a}), q.one());
  REQUIRE(s.rows() == 5);
  CHECK(s[0].is_symmetric());
  CHECK(s[0].block(0, 2, 2, 3) == a);
}

TEST_CASE("vee_lift members have the requested symmetry type") {
  GaloisField f(7);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    auto t = MatrixTuple<GaloisField>({random_matrix(f, 1 + rng() % 3, rng() % 4, rng)});
    for (int e : {1, -1}) REQUIRE(vee_lift(t, f.from_int(e))[0].is_symmetric_type(f.from_int(e)));
  }
}

TEST_CASE("direct_sum with zero-sized members") {
  Rationals q;
  auto i1 = MatrixTuple<Rationals>({QM::identity(q, 1)});
  CHECK(direct_sum(i1, i1)[0] == QM::identity(q, 2));

  auto m = QM::from_ints(q, {{1, 2}, {3, 4}});
  auto s = direct_sum(MatrixTuple<Rationals>({m}), MatrixTuple<Rationals>({QM(q, 0, 2)}));
  REQUIRE(s.rows() == 2);
  REQUIRE(s.cols() == 4);
  CHECK(s[0] == QM::from_ints(q, {{1, 2, 0, 0}, {3, 4, 0, 0}}));

  auto z = direct_sum(MatrixTuple<Rationals>({QM(q, 1, 0)}), MatrixTuple<Rationals>({QM(q, 0, 1)}));
  CHECK(z[0] == QM(q, 1, 1));

  try {
    direct_sum(i1, MatrixTuple<Rationals>({QM::identity(q, 1), QM::identity(q, 1)}));
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
}

TEST_CASE("apply_congruence examples and composition") {
  Rationals q;
  auto t = MatrixTuple<Rationals>({QM::identity(q, 2)});
  CHECK(apply_congruence(t, QM::identity(q, 2)) == t);
  CHECK(apply_congruence(t, QM::from_ints(q, {{2, 0}, {0, 1}}))[0] == QM::from_ints(q, {{4, 0}, {0, 1}}));

  GaloisField f(5);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 4;
    auto tt = MatrixTuple<GaloisField>({random_skew(f, n, rng), random_symmetric(f, n, rng)});
    auto q1 = random_invertible(f, n, rng), q2 = random_invertible(f, n, rng);
    REQUIRE(apply_congruence(apply_congruence(tt, q1), q2) == apply_congruence(tt, q1 * q2));
    auto moved = apply_congruence(tt, q1);
    REQUIRE(moved[0].is_skew());
    REQUIRE(moved[1].is_symmetric());
    // Substitutions and congruences commute.
    auto g = random_invertible(f, 2, rng);
    REQUIRE(apply_substitution(apply_congruence(tt, q1), g) == apply_congruence(apply_substitution(tt, g), q1));
  }
  try {
    apply_congruence(t, QM::from_ints(q, {{1, 1}, {1, 1}}));
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
  try {
    apply_congruence(MatrixTuple<Rationals>({QM(q, 2, 3)}), QM::identity(q, 2));
    FAIL("expected SizeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeMismatch);
  }
}

TEST_CASE("apply_equivalence examples") {
  Rationals q;
  auto a = QM::from_ints(q, {{1, 2}, {3, 5}});
  auto t = MatrixTuple<Rationals>({a});
  CHECK(apply_equivalence(t, QM::identity(q, 2), QM::identity(q, 2)) == t);
  CHECK(apply_equivalence(t, inverse(a), QM::identity(q, 2))[0] == QM::identity(q, 2));

  // A permutation congruence of the 350 x 350 triple keeps every rank.
  GaloisField f(5);
  auto big = build_T_lemma42(MatrixPair<GaloisField>(FM::from_ints(f, {{2}}), FM::from_ints(f, {{3}})), f.one());
  FM perm(f, big.rows(), big.rows());
  for (std::size_t i = 0; i < big.rows(); ++i) perm(i, (3 * i + 7) % big.rows()) = f.one();
  auto moved = apply_equivalence(big, perm, perm.transpose());
  for (std::size_t i = 0; i < 3; ++i) REQUIRE(rank(moved[i]) == rank(big[i]));
}

TEST_CASE("apply_substitution examples") {
  Rationals q;
  auto a = QM::from_ints(q, {{0, 1}, {-1, 0}});
  auto b = QM::from_ints(q, {{0, 3}, {-3, 0}});
  auto t = MatrixTuple<Rationals>({a, b});
  CHECK(apply_substitution(t, QM::identity(q, 2)) == t);
  CHECK(apply_substitution(t, QM::from_ints(q, {{0, 1}, {1, 0}})) == MatrixTuple<Rationals>({b, a}));
  auto g = QM::from_ints(q, {{2, 1}, {1, 1}});
  auto s = apply_substitution(t, g);
  CHECK(s[0] == a.scaled(q.from_int(2)) + b);
  CHECK(s[1] == a + b);
  try {
    apply_substitution(t, QM::identity(q, 3));
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
}

TEST_CASE("check_form_types") {
  Rationals q;
  auto i2 = QM::identity(q, 2);
  CHECK(check_form_types<Rationals>(MatrixTuple<Rationals>({i2, i2, i2}), signs(q, {1, 1, 1})));
  auto lifted = vee_lift(MatrixTuple<Rationals>({QM::from_ints(q, {{1, 2}}), QM::from_ints(q, {{3, 4}}),
                                                 QM::from_ints(q, {{5, 6}})}),
                         q.from_int(-1));
  CHECK(check_form_types<Rationals>(lifted, signs(q, {-1, -1, -1})));
  auto j2 = jordan_block(q, 2, q.zero());
  CHECK_FALSE(check_form_types<Rationals>(MatrixTuple<Rationals>({j2, i2, i2}), signs(q, {1, 1, 1})));
}

TEST_CASE("permutation_split examples") {
  Rationals q;
  auto two = permutation_split(MatrixTuple<Rationals>({QM::identity(q, 2)}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].tuple[0] == QM::identity(q, 1));

  auto one = permutation_split(MatrixTuple<Rationals>({QM::from_ints(q, {{0, 1}, {-1, 0}})}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].rows == std::vector<std::size_t>{0, 1});

  auto big = build_T_lemma42(MatrixPair<Rationals>(QM::identity(q, 1), QM::identity(q, 1)), q.one());
  auto parts = permutation_split(big);
  REQUIRE(parts.size() == 172);
  std::size_t twos = 0, eights = 0;
  for (const auto& p : parts) {
    twos += p.rows.size() == 2;
    eights += p.rows.size() == 8;
  }
  CHECK(twos == 171);
  CHECK(eights == 1);
}

TEST_CASE("permutation_split reassembles exactly and is sorted by smallest row") {
  GaloisField f(3);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    // Sparse members so that splitting is nontrivial.
    std::vector<FM> ms;
    for (int k = 0; k < 2; ++k) {
      FM m(f, r, c);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < c; ++b)
          if (rng() % 5 == 0) m(a, b) = random_nonzero(f, rng);
      ms.push_back(m);
    }
    MatrixTuple<GaloisField> t(ms);
    for (auto mode : {SplitMode::Bipartite, SplitMode::Simultaneous}) {
      if (mode == SplitMode::Simultaneous && r != c) continue;
      auto parts = permutation_split(t, mode);
      REQUIRE(reassemble(parts, r, c) == t);
      std::size_t rows = 0, cols = 0;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        rows += parts[k].rows.size();
        cols += parts[k].cols.size();
        if (k > 0 && !parts[k].rows.empty() && !parts[k - 1].rows.empty())
          REQUIRE(parts[k - 1].rows.front() < parts[k].rows.front());
        // Finest: each component's support graph is connected.
        if (parts[k].rows.size() + parts[k].cols.size() > 1) REQUIRE(permutation_split(parts[k].tuple, mode).size() == 1);
      }
      REQUIRE(rows == r);
      REQUIRE(cols == c);
    }
  }
}
