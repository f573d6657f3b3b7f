#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "congru/congru.hpp"

namespace {

using congru::ErrorKind;
using congru::FieldSpec;
using nlohmann::json;
namespace cj = congru::json;

constexpr int kOk = 0, kNegative = 1, kError = 2, kUsage = 64, kMalformed = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string field;
  std::uint32_t p = 0;
  unsigned k = 1;
  std::string modulus;
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string in;
  std::vector<std::string> files;
  std::string eps;
  std::string mode = "auto";
  bool emit = false;
  bool scramble = false;
  bool full = false;
};

std::vector<long long> parse_ints(const std::string& s, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " \"" + s + "\"");
    }
  }
  return out;
}

json read_document(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream file(path);
    if (!file) congru::fail(ErrorKind::MalformedInput, "cannot read " + path);
    std::ostringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    congru::fail(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

class Command {
 public:
  explicit Command(const Options& o) : o_(o) {}

  /// The field from the flags, or else from the document.
  FieldSpec field(const json* doc = nullptr) const {
    if (o_.field.empty()) {
      if (doc) return cj::document_field(*doc);
      throw UsageError("this input carries no field; pass --field");
    }
    if (o_.field == "q") return FieldSpec::rationals();
    if (o_.field != "fp") throw UsageError("--field must be q or fp");
    if (o_.p == 0) throw UsageError("--field fp needs --p");
    std::vector<std::uint32_t> modulus;
    if (!o_.modulus.empty())
      for (auto c : parse_ints(o_.modulus, "--modulus")) {
        if (c < 0) throw UsageError("--modulus coefficients must be nonnegative");
        modulus.push_back(static_cast<std::uint32_t>(c));
      }
    if (o_.k > 1 && modulus.empty()) throw UsageError("--k > 1 needs --modulus");
    return FieldSpec::finite(o_.p, o_.k, modulus);
  }

  json input() const { return read_document(o_.in); }

  std::pair<json, json> two_inputs() const {
    if (o_.files.size() != 2) throw UsageError("expected two input files");
    return {read_document(o_.files[0]), read_document(o_.files[1])};
  }

  void print(const json& j, const std::string& text) const {
    if (o_.format == "text")
      std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    else
      std::cout << j.dump() << "\n";
  }

  int decision(bool yes, const char* positive, const char* negative, json extra = json::object()) const {
    extra["decision"] = yes ? positive : negative;
    print(extra, yes ? positive : negative);
    return yes ? kOk : kNegative;
  }

  const Options& opts() const { return o_; }

 private:
  const Options& o_;
};

template <congru::Field F>
std::string tuple_text(const congru::MatrixTuple<F>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.arity(); ++i) s += "member " + std::to_string(i + 1) + ":\n" + t[i].to_string() + "\n";
  return s;
}

template <congru::Field F>
std::string invariants_text(const congru::SkewPencilInvariants<F>& inv) {
  std::string s;
  for (const auto& [q, m] : inv.finite) s += "finite " + q.to_string() + " m=" + std::to_string(m) + "\n";
  for (auto m : inv.infinite) s += "infinite m=" + std::to_string(m) + "\n";
  for (auto r : inv.minimal) s += "minimal r=" + std::to_string(r) + "\n";
  return s.empty() ? "empty\n" : s;
}

template <congru::Field F>
std::string label_text(const congru::LieLabel<F>& l) {
  std::string s = "t=" + std::to_string(l.t) + " dim=" + std::to_string(l.dim);
  if (l.t == 1) return s + " p=" + std::to_string(l.p) + " q=" + std::to_string(l.q);
  s += " minimal=[";
  for (std::size_t i = 0; i < l.minimal.size(); ++i) s += (i ? "," : "") + std::to_string(l.minimal[i]);
  s += "] split=" + std::string(l.split ? "yes" : "no");
  for (const auto& [p, sizes] : l.points.entries()) {
    s += "\n  ";
    s += p.is_infinity() ? "inf" : p.is_point() ? p.poly().field().to_string(p.value()) : p.poly().to_string();
    s += ":";
    for (auto m : sizes) s += " " + std::to_string(m);
  }
  return s;
}

template <congru::Field F>
std::string matrix_text(const congru::Matrix<F>& m) {
  return m.to_string();
}

template <typename Fn>
int with_input_field(const Command& c, const json& doc, Fn&& fn) {
  return congru::with_field(c.field(&doc), std::forward<Fn>(fn));
}

// --- gadget -------------------------------------------------------------

int gadget_build(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    const auto e = parse_ints(c.opts().eps, "--eps");
    if (e.size() != 3) throw UsageError("--eps needs three values");
    congru::EpsilonSignature<F> eps{f.from_int(e[0]), f.from_int(e[1]), f.from_int(e[2])};
    const auto t = congru::build_T(cj::pair_from_json(f, doc), eps);
    c.print(cj::tuple_to_json(t), tuple_text(t));
    return kOk;
  });
}

int gadget_lemma42(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto e = parse_ints(c.opts().eps.empty() ? "1" : c.opts().eps, "--eps");
    if (e.size() != 1) throw UsageError("--eps needs one value");
    const auto t = congru::build_T_lemma42(cj::pair_from_json(f, doc), f.from_int(e[0]));
    c.print(cj::tuple_to_json(t), tuple_text(t));
    return kOk;
  });
}

int gadget_witness(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto r = congru::witness_from_similarity(cj::matrix_from_json(f, doc));
    c.print(cj::matrix_to_json(r), matrix_text(r));
    return kOk;
  });
}

int gadget_verify(const Command& c) {
  const auto& files = c.opts().files;
  if (files.size() != 3) throw UsageError("expected first tuple, second tuple and witness files");
  const auto t1 = read_document(files[0]), t2 = read_document(files[1]), r = read_document(files[2]);
  return with_input_field(c, t1, [&](const auto& f) {
    const bool ok = congru::verify_congruence(cj::tuple_from_json(f, t1), cj::tuple_from_json(f, t2), cj::matrix_from_json(f, r));
    return c.decision(ok, "verified", "not verified");
  });
}

// --- pair / pencil ----------------------------------------------------------

int pair_similar(const Command& c) {
  const auto [a, b] = c.two_inputs();
  return with_input_field(c, a, [&](const auto& f) {
    const auto budget = c.opts().budget ? c.opts().budget : congru::kDefaultSearchBudget;
    const auto s = congru::intertwiner_similarity(cj::pair_from_json(f, a), cj::pair_from_json(f, b), budget);
    if (!s) return c.decision(false, "similar", "not similar");
    json out{{"witness", cj::matrix_to_json(*s)}};
    out["decision"] = "similar";
    c.print(out, "similar\n" + s->to_string());
    return kOk;
  });
}

int pencil_canon(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto inv = congru::pencil_invariants(cj::pair_from_json(f, doc));
    if (!c.opts().emit) {
      c.print(cj::invariants_to_json(inv), invariants_text(inv));
      return kOk;
    }
    const auto pair = congru::emit_canonical_pair(f, inv);
    c.print({{"invariants", cj::invariants_to_json(inv)}, {"canonical", cj::tuple_to_json(pair.tuple())}},
            invariants_text(inv) + tuple_text(pair.tuple()));
    return kOk;
  });
}

int pencil_congruent(const Command& c) {
  const auto [a, b] = c.two_inputs();
  return with_input_field(c, a, [&](const auto& f) {
    const bool yes = congru::pairs_congruent(cj::pair_from_json(f, a), cj::pair_from_json(f, b));
    return c.decision(yes, "congruent", "not congruent");
  });
}

int pencil_emit(const Command& c) {
  const auto doc = c.input();
  return congru::with_field(c.field(), [&](const auto& f) {
    auto t = congru::emit_canonical_pair(f, cj::invariants_from_json(f, doc)).tuple();
    if (c.opts().scramble && t.rows() > 0) {
      congru::Rng rng(c.opts().seed);
      t = congru::apply_congruence(t, congru::random_invertible(f, t.rows(), rng));
    }
    c.print(cj::tuple_to_json(t), tuple_text(t));
    return kOk;
  });
}

// --- lie / alg / pgroup -----------------------------------------------------

/// Structure constants, or a tuple encoded as its algebra.
template <congru::Field F>
congru::StructureConstants<F> algebra_input(const F& f, const json& doc) {
  if (doc.is_object() && doc.contains("members")) return congru::semialgebra_from_tuple(cj::tuple_from_json(f, doc));
  return cj::structure_from_json(f, doc);
}

int lie_classify(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto label = congru::lie_classify(algebra_input(f, doc));
    c.print(cj::label_to_json(f, label), label_text(label));
    return kOk;
  });
}

int lie_iso(const Command& c) {
  const auto [a, b] = c.two_inputs();
  return with_input_field(c, a, [&](const auto& f) {
    return c.decision(congru::lie_isomorphic(algebra_input(f, a), algebra_input(f, b)), "isomorphic", "not isomorphic");
  });
}

int lie_emit(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    auto alg = congru::emit_canonical_algebra(f, cj::label_from_json(f, doc));
    if (c.opts().scramble) {
      congru::Rng rng(c.opts().seed);
      alg = alg.in_basis(congru::random_invertible(f, alg.dim(), rng));
    }
    const auto j = cj::structure_to_json(alg);
    c.print(j, j.dump(2));
    return kOk;
  });
}

int alg_check(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto r = congru::check_semialgebra(algebra_input(f, doc));
    json j{{"cube_zero", r.cube_zero}, {"square_dim", r.square_dim}, {"commutative", r.commutative},
           {"anticommutative", r.anticommutative}};
    std::string text = "cube_zero " + std::string(r.cube_zero ? "yes" : "no") + "\nsquare_dim " +
                       std::to_string(r.square_dim) + "\ncommutative " + (r.commutative ? "yes" : "no") +
                       "\nanticommutative " + (r.anticommutative ? "yes" : "no");
    c.print(j, text);
    return kOk;
  });
}

int alg_adjoin1(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto j = cj::structure_to_json(congru::adjoin_identity(algebra_input(f, doc)));
    c.print(j, j.dump(2));
    return kOk;
  });
}

int alg_encode(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto j = cj::structure_to_json(congru::semialgebra_from_tuple(cj::tuple_from_json(f, doc)));
    c.print(j, j.dump(2));
    return kOk;
  });
}

int alg_decode(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    const auto ex = congru::tuple_from_semialgebra(cj::structure_from_json(f, doc));
    c.print({{"tuple", cj::tuple_to_json(ex.tuple)}, {"basis_change", cj::matrix_to_json(ex.basis_change)}},
            tuple_text(ex.tuple) + "basis change:\n" + ex.basis_change.to_string());
    return kOk;
  });
}

int pgroup_present(const Command& c) {
  const auto doc = c.input();
  return with_input_field(c, doc, [&](const auto& f) {
    std::cout << congru::pgroup_presentation(cj::tuple_from_json(f, doc));
    return kOk;
  });
}

int tuple_split(const Command& c) {
  const auto doc = c.input();
  const auto& m = c.opts().mode;
  const auto mode = m == "auto"           ? congru::SplitMode::Auto
                    : m == "simultaneous" ? congru::SplitMode::Simultaneous
                    : m == "bipartite"    ? congru::SplitMode::Bipartite
                                          : throw UsageError("--mode must be auto, simultaneous or bipartite");
  return with_input_field(c, doc, [&](const auto& f) {
    const auto parts = congru::permutation_split(cj::tuple_from_json(f, doc), mode);
    const auto j = cj::split_to_json(parts);
    c.print(j, j.dump(2));
    return kOk;
  });
}

// --- oracle / selftest --------------------------------------------------------

template <typename Fn>
int with_finite_field(const Command& c, const json& doc, Fn&& fn) {
  return with_input_field(c, doc, [&](const auto& f) -> int {
    if constexpr (congru::FiniteField<std::decay_t<decltype(f)>>)
      return fn(f);
    else
      congru::fail(ErrorKind::InvalidField, "brute-force oracles need a finite field");
  });
}

congru::EnumerationBudget oracle_budget(const Command& c) {
  congru::EnumerationBudget b;
  if (c.opts().budget) b.max_group_order = c.opts().budget;
  b.seed = c.opts().seed;
  return b;
}

int oracle_similar(const Command& c) {
  const auto [a, b] = c.two_inputs();
  return with_finite_field(c, a, [&](const auto& f) {
    const auto s = congru::brute_similar(cj::pair_from_json(f, a), cj::pair_from_json(f, b), oracle_budget(c));
    if (!s) return c.decision(false, "similar", "not similar");
    return c.decision(true, "similar", "not similar", {{"witness", cj::matrix_to_json(*s)}});
  });
}

int oracle_congruent(const Command& c) {
  const auto [a, b] = c.two_inputs();
  return with_finite_field(c, a, [&](const auto& f) {
    const auto q = congru::brute_congruent(cj::tuple_from_json(f, a), cj::tuple_from_json(f, b), oracle_budget(c));
    if (!q) return c.decision(false, "congruent", "not congruent");
    return c.decision(true, "congruent", "not congruent", {{"witness", cj::matrix_to_json(*q)}});
  });
}

int oracle_orbit_iso(const Command& c) {
  const auto [a, b] = c.two_inputs();
  return with_finite_field(c, a, [&](const auto& f) {
    const auto w = congru::brute_orbit_witness(cj::tuple_from_json(f, a), cj::tuple_from_json(f, b), oracle_budget(c));
    if (!w) return c.decision(false, "isomorphic", "not isomorphic");
    return c.decision(true, "isomorphic", "not isomorphic",
                      {{"congruence", cj::matrix_to_json(w->first)}, {"substitution", cj::matrix_to_json(w->second)}});
  });
}

int selftest(const Command& c) {
  using namespace congru::selftest;
  bool all = true;
  json results = json::array();
  run_all(c.opts().full ? Scale::Full : Scale::Reduced, [&](const CriterionResult& r) {
    all = all && r.passed;
    if (c.opts().format == "text") {
      std::cout << format_line(r) << std::endl;
    } else {
      results.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"checks", r.cases},
                         {"summary", r.summary}});
    }
  });
  if (c.opts().format != "text") std::cout << json{{"results", results}, {"passed", all}}.dump() << "\n";
  return all ? kOk : kNegative;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--field", o.field, "Coefficient field: q or fp")->check(CLI::IsMember({"q", "fp"}));
  app->add_option("--p", o.p, "Characteristic for --field fp");
  app->add_option("--k", o.k, "Extension degree for --field fp");
  app->add_option("--modulus", o.modulus, "Irreducible modulus coefficients, low to high, comma separated");
  app->add_option("--budget", o.budget, "Cap on exhaustive searches");
  app->add_option("--seed", o.seed, "Seed for randomized steps");
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact congruence, similarity and Lie algebra classification tools", "congru"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto leaf = [&](CLI::App* group, const char* name, const char* help, int (*fn)(const Command&)) {
    auto* sub = group->add_subcommand(name, help);
    add_common(sub, o);
    sub->callback([&action, &o, fn] { action = [&o, fn] { return fn(Command(o)); }; });
    return sub;
  };
  auto with_in = [&](CLI::App* sub) {
    sub->add_option("--in", o.in, "Input JSON (stdin if omitted)");
    return sub;
  };
  auto with_files = [&](CLI::App* sub, const char* what) {
    sub->add_option("files", o.files, what)->required();
    return sub;
  };

  auto* gadget = app.add_subcommand("gadget", "Similarity-to-congruence gadgets")->require_subcommand(1);
  with_in(leaf(gadget, "build", "Build the triple T_eps(A, B) from a pair", gadget_build))
      ->add_option("--eps", o.eps, "Signs eps1,eps2,eps3")
      ->required();
  with_in(leaf(gadget, "lemma42", "Build the 350 x 350 style triple for a pair", gadget_lemma42))
      ->add_option("--eps", o.eps, "Common sign");
  with_in(leaf(gadget, "witness", "Congruence witness from a similarity witness S", gadget_witness));
  with_files(leaf(gadget, "verify", "Check R^T T1 R = T2", gadget_verify), "first.json second.json witness.json");

  auto* pair = app.add_subcommand("pair", "Matrix pairs")->require_subcommand(1);
  with_files(leaf(pair, "similar", "Decide simultaneous similarity", pair_similar), "a.json b.json");

  auto* pencil = app.add_subcommand("pencil", "Skew-symmetric pairs under congruence")->require_subcommand(1);
  with_in(leaf(pencil, "canon", "Congruence invariants of a skew pair", pencil_canon))
      ->add_flag("--emit", o.emit, "Also print the canonical pair");
  with_files(leaf(pencil, "congruent", "Decide congruence of skew pairs", pencil_congruent), "a.json b.json");
  auto* emit = with_in(leaf(pencil, "emit", "Canonical pair for invariants (needs --field)", pencil_emit));
  emit->add_flag("--scramble", o.scramble, "Apply a random congruence (see --seed)");

  auto* lie = app.add_subcommand("lie", "Two-step nilpotent Lie algebras")->require_subcommand(1);
  with_in(leaf(lie, "classify", "Isomorphism label", lie_classify));
  with_files(leaf(lie, "iso", "Decide isomorphism", lie_iso), "a.json b.json");
  with_in(leaf(lie, "emit", "Canonical algebra for a label", lie_emit))
      ->add_flag("--scramble", o.scramble, "Apply a random basis change (see --seed)");

  auto* alg = app.add_subcommand("alg", "Algebras with cube-zero radical")->require_subcommand(1);
  with_in(leaf(alg, "check", "Report cube, square dimension and symmetry", alg_check));
  with_in(leaf(alg, "adjoin1", "Adjoin an identity", alg_adjoin1));
  with_in(leaf(alg, "encode", "Algebra of a symmetric or skew tuple", alg_encode));
  with_in(leaf(alg, "decode", "Tuple and basis change of an algebra", alg_decode));

  auto* pgroup = app.add_subcommand("pgroup", "p-groups of class two")->require_subcommand(1);
  with_in(leaf(pgroup, "present", "GAP presentation for a skew tuple over a prime field", pgroup_present));

  auto* tuple = app.add_subcommand("tuple", "Matrix tuples")->require_subcommand(1);
  with_in(leaf(tuple, "split", "Finest permutation splitting", tuple_split))
      ->add_option("--mode", o.mode, "auto, simultaneous or bipartite");

  auto* oracle = app.add_subcommand("oracle", "Brute-force deciders over small finite fields")->require_subcommand(1);
  with_files(leaf(oracle, "similar", "Enumerate GL_n for a similarity", oracle_similar), "a.json b.json");
  with_files(leaf(oracle, "congruent", "Enumerate GL_n for a congruence", oracle_congruent), "a.json b.json");
  with_files(leaf(oracle, "orbit-iso", "Enumerate GL_n x GL_t", oracle_orbit_iso), "a.json b.json");

  leaf(&app, "selftest", "Run the acceptance checks (reduced sizes unless --full)", selftest)
      ->add_flag("--full", o.full, "Run the full-size checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const congru::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::MalformedInput ? kMalformed : kError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: MalformedInput: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
