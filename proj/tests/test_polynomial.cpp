#include <catch_amalgamated.hpp>

#include "congru/factor.hpp"
#include "congru/random.hpp"
#include "congru/smith.hpp"

using namespace congru;

namespace {

using QP = Polynomial<Rationals>;

// Determinantal divisors: D_k = monic gcd of all k x k minors; invariant factors
// are D_k / D_{k-1}. Minors by cofactor expansion over F[x].
template <Field F>
Polynomial<F> poly_minor(const PolyMatrix<F>& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  const F& f = m.field();
  if (rows.empty()) return Polynomial<F>::constant(f, f.one());
  Polynomial<F> acc(f);
  const std::size_t r = rows.front();
  std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (m(r, cols[k]).is_zero()) continue;
    std::vector<std::size_t> sub = cols;
    sub.erase(sub.begin() + static_cast<long>(k));
    auto term = m(r, cols[k]) * poly_minor(m, rest, sub);
    acc = k % 2 ? acc - term : acc + term;
  }
  return acc;
}

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

template <Field F>
std::vector<Polynomial<F>> determinantal_invariants(const PolyMatrix<F>& m) {
  const F& f = m.field();
  std::vector<Polynomial<F>> out;
  Polynomial<F> prev = Polynomial<F>::constant(f, f.one());
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    choose(m.rows(), k, 0, cur, rs);
    choose(m.cols(), k, 0, cur, cs);
    Polynomial<F> g(f);
    for (const auto& r : rs)
      for (const auto& c : cs) g = gcd(g, poly_minor(m, r, c));
    if (g.is_zero()) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST_CASE("polynomial division and gcd") {
  Rationals q;
  auto a = QP::from_ints(q, {-1, 0, 1});  // x^2 - 1
  auto b = QP::from_ints(q, {1, 1});      // x + 1
  auto [quo, rem] = divmod(a, b);
  CHECK(quo == QP::from_ints(q, {-1, 1}));
  CHECK(rem.is_zero());
  CHECK(gcd(a, QP::from_ints(q, {-2, 1}) * b) == b);
  CHECK(QP(q).degree() == QP::kZeroDegree);
  auto [g, s, t] = xgcd(QP::from_ints(q, {1, 0, 1}), QP::from_ints(q, {0, 1}));
  CHECK(g.is_one());
  CHECK(s * QP::from_ints(q, {1, 0, 1}) + t * QP::from_ints(q, {0, 1}) == g);
}

TEST_CASE("square-free decomposition handles p-th powers") {
  GaloisField f3(3);
  using P = Polynomial<GaloisField>;
  auto xp1 = P::from_ints(f3, {1, 1});
  auto x = P::x(f3);
  // (x+1)^3 has zero derivative in characteristic 3.
  auto poly = pow(xp1, 3) * pow(x, 2);
  auto sf = squarefree(poly);
  auto fs = factor(poly);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first == x);
  CHECK(fs[0].second == 2);
  CHECK(fs[1].first == xp1);
  CHECK(fs[1].second == 3);
  CHECK(expand(f3, sf) == poly);
}

TEST_CASE("rational factorization: roots, quadratics and a split quartic") {
  Rationals q;
  auto quartic = QP::from_ints(q, {1, 0, 1}) * QP::from_ints(q, {-2, 0, 1});  // (x^2+1)(x^2-2)
  auto fs = factor(quartic * QP::from_ints(q, {-1, 2}));                       // times (2x - 1)
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].first == QP::linear(q, mpq_class(1, 2)));
  CHECK(fs[1].first == QP::from_ints(q, {1, 0, 1}));
  CHECK(fs[2].first == QP::from_ints(q, {-2, 0, 1}));
  // x^4 + 1 is irreducible over Q: the Kronecker search must find nothing.
  auto x4p1 = factor(QP::from_ints(q, {1, 0, 0, 0, 1}));
  REQUIRE(x4p1.size() == 1);
  CHECK(x4p1[0].first.degree() == 4);
  auto sq = factor(pow(QP::from_ints(q, {3, 0, 1}), 2) * QP::x(q));
  REQUIRE(sq.size() == 2);
  CHECK(sq[1].second == 2);
}

TEST_CASE("smith_polymatrix examples") {
  Rationals q;
  auto x = QP::x(q);
  SECTION("diag(x, x^2) is already in Smith form") {
    PolyMatrix<Rationals> m(q, 2, 2);
    m(0, 0) = x;
    m(1, 1) = x * x;
    auto s = smith(m);
    REQUIRE(s.invariant_factors.size() == 2);
    CHECK(s.invariant_factors[0] == x);
    CHECK(s.invariant_factors[1] == x * x);
  }
  SECTION("I + x J_2(0) is unimodular") {
    auto s = smith(PolyMatrix<Rationals>::pencil(jordan_block(q, 2, q.zero()), Matrix<Rationals>::identity(q, 2)));
    REQUIRE(s.invariant_factors.size() == 2);
    CHECK(s.invariant_factors[0].is_one());
    CHECK(s.invariant_factors[1].is_one());
  }
  SECTION("x I_2 + J_2(0) has invariant factors (1, x^2)") {
    auto m = PolyMatrix<Rationals>::pencil(Matrix<Rationals>::identity(q, 2), jordan_block(q, 2, q.zero()));
    auto oracle = determinantal_invariants(m);
    REQUIRE(oracle.size() == 2);
    REQUIRE(oracle[0].is_one());
    REQUIRE(oracle[1] == x * x);
    auto s = smith(m);
    CHECK(s.invariant_factors == oracle);
  }
}

TEST_CASE("Smith transforms reproduce P and match determinantal divisors up to 6x6") {
  GaloisField f5(5);
  Rationals q;
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto pm = PolyMatrix<GaloisField>::pencil(random_matrix(f5, r, c, rng), random_matrix(f5, r, c, rng));
    auto s = smith(pm, true);
    auto d = *s.left * pm * *s.right;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) {
        if (a == b && a < s.rank())
          REQUIRE(d(a, b) == s.invariant_factors[a]);
        else
          REQUIRE(d(a, b).is_zero());
      }
    for (std::size_t k = 1; k < s.rank(); ++k) REQUIRE(s.invariant_factors[k - 1].divides(s.invariant_factors[k]));
    REQUIRE(s.invariant_factors == determinantal_invariants(pm));
  }
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 5 + rng() % 2;
    auto a = random_matrix(q, n, n, rng);
    auto pm = PolyMatrix<Rationals>::pencil(a, random_matrix(q, n, n, rng));
    auto s = smith(pm, true);
    auto d = *s.left * pm * *s.right;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        REQUIRE((u == v && u < s.rank() ? d(u, v) == s.invariant_factors[u] : d(u, v).is_zero()));
    for (std::size_t k = 1; k < s.rank(); ++k) REQUIRE(s.invariant_factors[k - 1].divides(s.invariant_factors[k]));
  }
}
