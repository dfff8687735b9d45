#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cloneworks/builtins.hpp"
#include "cloneworks/error.hpp"
#include "cloneworks/primal.hpp"
#include "oracles.hpp"

using namespace cloneworks;

TEST_CASE("balanced sums have logarithmic height", "[primal]") {
  OperationSymbol t{"plus", 2};
  CHECK(print_term(build_sigma(t, 1)) == "x1");
  CHECK(print_term(build_sigma(t, 3)) == "(plus (plus x1 x2) x3)");
  CHECK(build_sigma(t, 1024).height() == 10);
  for (std::size_t n = 1; n <= 300; ++n) {
    auto s = build_sigma(t, n);
    CHECK(s.height() == ceil_log2(BigInt(n)));
    CHECK(s.length() == 2 * n - 1);
    CHECK(s.max_variable() == n);
  }
  CHECK_THROWS_AS(build_sigma({"neg", 1}, 4), TermError);
}

TEST_CASE("balanced sums absorb zeros", "[primal]") {
  for (auto const* name : {"bool-post", "three-post"}) {
    auto alg  = builtin_algebra(name);
    auto plus = alg.find(*alg.designation("plus"))->symbol;
    for (std::size_t n = 1; n <= 20; ++n) {
      CHECK_FALSE(sigma_absorption_failure(alg, plus, 0, n).has_value());
    }
  }
  // and(x, 1) absorbs the unit 1, but not 0
  auto alg = builtin_algebra("bool-post");
  auto bad = sigma_absorption_failure(alg, {"and", 2}, 0, 3);
  REQUIRE(bad.has_value());
  CHECK(bad->second == 1);
}

TEST_CASE("the shipped bases validate with s = 1", "[primal]") {
  auto b = validate_basis(builtin_algebra("bool-post"));
  CHECK(b.s == 1);
  CHECK(b.zero == 0);
  CHECK(b.one == 1);
  CHECK(b.chi == std::vector<std::string>{"not", "id"});
  auto t = validate_basis(builtin_algebra("three-post"));
  CHECK(t.s == 1);
  REQUIRE(t.constant_terms.size() == 3);
  for (std::size_t a = 0; a < 3; ++a) {
    auto tab = induced_table(t.algebra, t.constant_terms[a], 1);
    CHECK(tab == OpTable::constant(3, 1, static_cast<Element>(a)));
  }
}

TEST_CASE("a bad designation names the identity and a witness", "[primal]") {
  auto text = print_algebra(builtin_algebra("bool-post"));
  auto pos  = text.find("designate plus or");
  text.replace(pos, 17, "designate plus and");
  try {
    validate_basis(parse_algebra(text));
    FAIL("expected InvalidBasis");
  } catch (InvalidBasis const& e) {
    std::string msg = e.what();
    CHECK(msg.find("x+0 = x") != std::string::npos);
    CHECK(msg.find("x = 1") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_basis(builtin_algebra("z2-plus")), InvalidBasis);
}

TEST_CASE("synthesis reproduces xor and stays within the height bound", "[primal]") {
  auto    basis = validate_basis(builtin_algebra("bool-post"));
  OpTable xor2(2, 2, {0, 1, 1, 0});
  Term    t = synthesize_term(basis, xor2);
  CHECK(induced_table(basis.algebra, t, 2) == xor2);
  CHECK(synthesis_height_bound(2, 2, 1) == 5);
  CHECK(t.height() <= 5);
  // summand height is exactly 1 + max(s, n)
  CHECK(t.height() == 2 + 1 + 2);
}

TEST_CASE("synthesis of constant zero and of addition mod 3", "[primal]") {
  auto basis = validate_basis(builtin_algebra("three-post"));
  auto zero  = OpTable::constant(3, 1, 0);
  CHECK(induced_table(basis.algebra, synthesize_term(basis, zero), 1) == zero);
  std::vector<Element> add;
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      add.push_back(static_cast<Element>((x + y) % 3));
    }
  }
  OpTable target(3, 2, add);
  Term    t = synthesize_term(basis, target);
  CHECK(oracle::table_of(basis.algebra, t, 2) == add);
  CHECK(t.height() <= synthesis_height_bound(3, 2, 1));
}

TEST_CASE("random three-post targets at arity 3", "[primal]") {
  auto            basis = validate_basis(builtin_algebra("three-post"));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5; ++i) {
    std::vector<Element> v(27);
    for (auto& e : v) {
      e = static_cast<Element>(rng() % 3);
    }
    OpTable target(3, 3, v);
    Term    t = synthesize_term(basis, target);
    CHECK(induced_table(basis.algebra, t, 3) == target);
    CHECK(t.height() <= synthesis_height_bound(3, 3, 1));
  }
}

TEST_CASE("primality probe", "[primal]") {
  auto rows = primality_probe(builtin_algebra("bool-andnot"), 2, default_budget);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status == PrimalityStatus::primal);
  CHECK(rows[1].status == PrimalityStatus::primal);
  CHECK(rows[1].fs == 16);
  auto z2 = primality_probe(builtin_algebra("z2-plus"), 2, default_budget);
  CHECK(z2[1].status == PrimalityStatus::not_primal);
  CHECK(z2[1].all_functions == 16);
  auto tight = primality_probe(builtin_algebra("bool-andnot"), 2, 3);
  CHECK(tight[1].status == PrimalityStatus::inconclusive);
}
