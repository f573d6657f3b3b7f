#include <catch_amalgamated.hpp>

#include "congru/json_io.hpp"
#include "congru/random.hpp"

using namespace congru;

namespace {

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("field specs roundtrip") {
  for (const auto& s : {FieldSpec::rationals(), FieldSpec::finite(7), FieldSpec::finite(3, 2, {1, 0, 1})})
    CHECK(json::field_from_json(json::field_to_json(s)) == s);
  CHECK(json::field_from_json(json::json::parse(R"({"kind":"Fp","p":5})")) == FieldSpec::finite(5));
  CHECK(kind_of([] { json::field_from_json(json::json::parse(R"({"kind":"R"})")); }) == ErrorKind::MalformedInput);
}

TEST_CASE("matrix JSON layout and roundtrip") {
  Rationals q;
  Matrix<Rationals> m(q, 1, 2);
  m(0, 0) = mpq_class(-3, 4);
  m(0, 1) = q.from_int(2);
  const auto j = json::matrix_to_json(m);
  CHECK(j.dump() == R"({"cols":2,"entries":[["-3/4","2"]],"field":{"kind":"Q"},"rows":1})");
  CHECK(json::matrix_from_json(q, j) == m);
  CHECK(json::matrix_from_json(q, json::json::parse(R"({"rows":1,"cols":2,"entries":[["6/-8", 2]]})")) == m);

  GaloisField f9(FieldSpec::finite(3, 2, {1, 0, 1}));
  Rng rng(3);
  auto a = random_matrix(f9, 3, 2, rng);
  CHECK(json::matrix_from_json(f9, json::json::parse(json::matrix_to_json(a).dump())) == a);
  CHECK(json::matrix_to_json(Matrix<GaloisField>::identity(GaloisField(5), 1))["entries"].dump() == "[[[1]]]");

  CHECK(kind_of([&] { json::matrix_from_json(q, json::json::parse(R"({"rows":1,"cols":1,"entries":[["1/0"]]})")); }) ==
        ErrorKind::MalformedInput);
  CHECK(kind_of([&] { json::matrix_from_json(q, json::json::parse(R"({"rows":2,"cols":1,"entries":[["1"]]})")); }) ==
        ErrorKind::MalformedInput);
  CHECK(kind_of([&] { json::matrix_from_json(q, json::matrix_to_json(a)); }) == ErrorKind::MalformedInput);
}

TEST_CASE("tuples, invariants, algebras and labels roundtrip") {
  GaloisField f(7);
  Rng rng(9);
  MatrixTuple<GaloisField> t({random_skew(f, 4, rng), random_skew(f, 4, rng)});
  const auto tj = json::tuple_to_json(t);
  CHECK(json::tuple_from_json(f, tj) == t);
  CHECK(json::document_field(tj) == f.spec());

  auto inv = pencil_invariants(MatrixPair<GaloisField>::from_tuple(t));
  CHECK(json::invariants_from_json(f, json::invariants_to_json(inv)) == inv);
  auto zero = json::invariants_to_json(pencil_invariants(MatrixPair<GaloisField>(Matrix<GaloisField>(f, 1, 1), Matrix<GaloisField>(f, 1, 1))));
  CHECK(zero.dump() == R"({"finite":[],"infinite":[],"minimal":[1]})");

  auto alg = semialgebra_from_tuple(t);
  CHECK(json::structure_from_json(f, json::structure_to_json(alg)) == alg);

  SkewPencilInvariants<GaloisField> mixed{{{Polynomial<GaloisField>::from_ints(f, {1, 0, 1}), 1}, {Polynomial<GaloisField>::linear(f, f.from_int(3)), 2}}, {1}, {2}};
  mixed.normalize();
  auto label = lie_classify(semialgebra_from_tuple(emit_canonical_pair(f, mixed).tuple()));
  CHECK_FALSE(label.split);
  CHECK(json::label_from_json(f, json::label_to_json(f, label)) == label);
  LieLabel<GaloisField> h{1, 3, 1, 1};
  CHECK(json::label_to_json(f, h).dump() == R"({"dim":3,"field":{"k":1,"kind":"Fp","modulus":[0,1],"p":7},"p":1,"q":1,"t":1})");
  CHECK(json::label_from_json(f, json::label_to_json(f, h)) == h);
}
