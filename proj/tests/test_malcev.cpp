#include <catch2/catch_amalgamated.hpp>

#include "cloneworks/bounds.hpp"
#include "cloneworks/builtins.hpp"
#include "cloneworks/malcev.hpp"
#include "oracles.hpp"

using namespace cloneworks;

namespace {

  MalcevCertificate certificate(char const* name) {
    auto s = find_malcev_term(builtin_algebra(name), default_budget);
    REQUIRE(s.status == SearchStatus::found);
    return *s.certificate;
  }

}  // namespace

TEST_CASE("Mal'cev search on the abelian groups", "[malcev]") {
  auto z2 = builtin_algebra("z2-plus");
  auto q  = certificate("z2-plus");
  CHECK(q.height == 2);
  CHECK(q.term.height() == 2);
  CHECK(induced_table(z2, q.term, 3).to_string() == "0 1 1 0 1 0 0 1");

  auto z3 = builtin_algebra("z3-plus");
  auto q3 = certificate("z3-plus");
  for (Element x = 0; x < 3; ++x) {
    for (Element y = 0; y < 3; ++y) {
      CHECK(oracle::eval(z3, q3.term, {x, y, y}) == x);
      CHECK(oracle::eval(z3, q3.term, {y, y, x}) == x);
      CHECK(oracle::eval(z3, q3.term, {x, y, x}) == (2 * x + 3 - y) % 3);
    }
  }
}

TEST_CASE("the semilattice has no Mal'cev term", "[malcev]") {
  auto s = find_malcev_term(builtin_algebra("semilattice2"), default_budget);
  CHECK(s.status == SearchStatus::none);
  CHECK(s.complete);
  CHECK(s.clone_size == 7);
  auto tight = find_malcev_term(builtin_algebra("bool-andnot"), 4);
  CHECK(tight.status == SearchStatus::inconclusive);
}

TEST_CASE("cube terms have arity 2^n - 1 and satisfy the cube identities", "[malcev]") {
  for (auto const* name : {"z2-plus", "z3-plus", "bool-andnot"}) {
    auto alg = builtin_algebra(name);
    auto q   = certificate(name);
    for (std::size_t n = 2; n <= 5; ++n) {
      CubeTerm c = build_cube_term(q, n);
      CHECK(c.arity() == (std::size_t{1} << n) - 1);
      CHECK(c.term.max_variable() == c.arity());
      CHECK(c.term.height() <= (n - 1) * build_cube_term(q, 2).term.height());
      CHECK_FALSE(cube_identity_failure(alg, c).has_value());
    }
    // q_2(x, y, z) = q(y, x, z)
    auto q2 = induced_table(alg, build_cube_term(q, 2).term, 3);
    auto qt = induced_table(alg, q.term, 3);
    std::vector<Element> x(3, 0);
    do {
      std::vector<Element> swapped{x[1], x[0], x[2]};
      CHECK(q2.at(x) == qt.at(swapped));
    } while (next_tuple(x, alg.universe_size()));
  }
  CHECK_THROWS(build_cube_term(certificate("z2-plus"), 1));
}

TEST_CASE("designated Mal'cev operations are checked", "[malcev]") {
  auto text = print_algebra(builtin_algebra("z2-plus-maj")) + "designate malcev sum3\n";
  auto alg  = parse_algebra(text);
  auto d    = designated_malcev(alg);
  REQUIRE(d.has_value());
  CHECK(d->height == 1);
  auto bad = parse_algebra("algebra b\nsize 2\nop f 3\n0 0 0 0 0 0 0 0\ndesignate malcev f\n");
  CHECK_THROWS_AS(designated_malcev(bad), InvalidBasis);
}

TEST_CASE("supernilpotency of degree 1", "[malcev][spn]") {
  auto z2 = check_supernilpotent(builtin_algebra("z2-plus"), 1, default_budget);
  CHECK(z2.status == SpnStatus::holds);
  CHECK(z2.complete_enumeration);
  CHECK(z2.polynomial_operations == 8);
  CHECK(z2.instances_checked == 8 * 16);

  auto z3 = check_supernilpotent(builtin_algebra("z3-plus"), 1, default_budget);
  CHECK(z3.status == SpnStatus::holds);
  CHECK(z3.complete_enumeration);

  auto bp = check_supernilpotent(builtin_algebra("bool-post"), 1, default_budget);
  REQUIRE(bp.status == SpnStatus::fails);
  REQUIRE(bp.witness.has_value());
  auto const& w   = *bp.witness;
  auto        exp = builtin_algebra("bool-post").with_constants();
  // the witness re-evaluates: its term induces its table and q_2 disagrees
  CHECK(induced_table(exp, w.polynomial_term, 2) == w.polynomial);
  auto vals = cube_values(w.polynomial, w.a, w.b);
  CHECK(vals.back() == w.rhs);
  auto q2  = induced_table(builtin_algebra("bool-post"), bp.cube->term, 3);
  CHECK(q2.at(std::vector<Element>(vals.begin(), vals.end() - 1)) == w.lhs);
  CHECK(w.lhs != w.rhs);
}

TEST_CASE("the and-gate instance from the definition fails", "[malcev][spn]") {
  auto alg = builtin_algebra("bool-post");
  auto q   = certificate("bool-post");
  auto q2  = induced_table(alg, build_cube_term(q, 2).term, 3);
  OpTable conj(2, 2, {0, 0, 0, 1});
  std::vector<Element> a{0, 0}, b{1, 1};
  auto vals = cube_values(conj, a, b);
  CHECK(vals == std::vector<Element>{0, 0, 0, 1});
  CHECK(q2.at(std::vector<Element>{0, 0, 0}) == 0);
}

TEST_CASE("SPN without a Mal'cev term is inconclusive", "[malcev][spn]") {
  auto v = check_supernilpotent(builtin_algebra("semilattice2"), 1, default_budget);
  CHECK(v.status == SpnStatus::inconclusive);
  CHECK_FALSE(v.note.empty());
}

TEST_CASE("Mal'cev chains depend on all arguments", "[malcev][chain]") {
  for (auto const* name : {"z2-plus", "z3-plus"}) {
    auto alg = builtin_algebra(name);
    auto q   = certificate(name);
    for (std::size_t k = 1; k <= 4; ++k) {
      Term t = malcev_chain(q, k);
      CHECK(t.max_variable() == 2 * k + 1);
      auto tab = induced_table(alg, t, 2 * k + 1);
      auto v   = std::vector<Element>(tab.values().begin(), tab.values().end());
      CHECK(essential_arity(tab) == 2 * k + 1);
      CHECK(oracle::essential_arity(v, alg.universe_size(), 2 * k + 1) == 2 * k + 1);
      CHECK_FALSE(chain_parity_failure(alg, t, k, 0, 1).has_value());
      CHECK_FALSE(chain_parity_failure(alg, t, k, 1, 0).has_value());
    }
  }
}

TEST_CASE("commutator expansion grows exponentially", "[malcev][demo]") {
  auto g  = builtin_algebra("a4-group");
  auto gc = builtin_algebra("a4-commutator");
  auto r2 = commutator_growth_demo(g, gc, 2, 100, 1);
  CHECK(r2.len_expanded == 9);
  CHECK(r2.len_commutator_signature == 3);
  CHECK(r2.agree);
  auto r5 = commutator_growth_demo(g, gc, 5, 100, 1);
  CHECK(r5.len_expanded == 121);
  CHECK(r5.len_commutator_signature == 9);
  CHECK(r5.agree);
  // a wrong comm table is caught
  auto text = print_algebra(gc);
  auto pos  = text.find("op comm 2\n");
  REQUIRE(pos != std::string::npos);
  text[pos + 10] = text[pos + 10] == '1' ? '2' : '1';
  auto broken    = parse_algebra(text);
  CHECK_FALSE(commutator_growth_demo(g, broken, 3, 1000, 1).agree);
}
