#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "cloneworks/bounds.hpp"
#include "cloneworks/builtins.hpp"
#include "oracles.hpp"

using namespace cloneworks;

TEST_CASE("general bounds hold on the small builtins", "[bounds]") {
  struct Case {
    char const* name;
    std::size_t n;
  };
  for (auto c : {Case{"z2-plus", 4}, Case{"z3-plus", 3}, Case{"bool-andnot", 3},
                 Case{"semilattice2", 4}, Case{"z2-plus-maj", 4}}) {
    INFO(c.name);
    auto report = verify_general_bounds(builtin_algebra(c.name), c.n, default_budget);
    CHECK(report.all_pass());
    CHECK_FALSE(report.any_failure());
    REQUIRE(report.rows.size() == c.n);
    for (auto const& row : report.rows) {
      CHECK(row.checks.size() == 6);
    }
  }
}

TEST_CASE("bound rows for z2-plus match hand computation", "[bounds]") {
  auto report = verify_general_bounds(builtin_algebra("z2-plus"), 3, default_budget);
  auto find   = [&](std::size_t n, std::string const& name) {
    for (auto const& c : report.rows[n - 1].checks) {
      if (c.name == name) {
        return c;
      }
    }
    FAIL("missing check " << name);
    return BoundCheck{};
  };
  CHECK(find(2, "fs_lt_pow_len").lhs == 4);
  CHECK(find(2, "fs_lt_pow_len").rhs == 64);
  CHECK(find(3, "ht_le_fs").lhs == 2);
  CHECK(find(3, "ht_le_fs").rhs == 8);
  CHECK(find(3, "len_le_geometric_sum").lhs == 5);
  CHECK(find(3, "len_le_geometric_sum").rhs == 7);
  CHECK(find(3, "geometric_sum_le_pow").rhs == 9);
  CHECK(find(3, "fs_le_exp_log_len").implied);
}

TEST_CASE("a violated inequality is reported as a failure", "[bounds]") {
  SequenceRow row{2, true, 100, 1, 2, 0};  // Fs = 100 is not < 4^2
  auto        checks = general_bound_checks(row, 1, 2);
  CHECK_FALSE(checks[0].pass);
  CHECK(checks[0].slack() < 0);
  SequenceRow tall{1, true, 2, 5, 3, 0};  // Ht > Len
  bool        ht_len_fails = false;
  for (auto const& c : general_bound_checks(tall, 1, 2)) {
    if (c.name == "ht_le_len") {
      ht_len_fails = !c.pass;
    }
  }
  CHECK(ht_len_fails);
}

TEST_CASE("big powers are exact", "[bounds]") {
  // (n + r + 1)^Len overflows 64 bits quickly
  CHECK(big_pow(BigInt(10), 30).str() == "1" + std::string(30, '0'));
  CHECK(big_pow(BigInt(7), 0) == 1);
}

TEST_CASE("essential arity matches the definition", "[bounds]") {
  std::mt19937_64 rng(3);
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int i = 0; i < 30; ++i) {
        std::vector<Element> v(oracle::ipow(m, n));
        for (auto& e : v) {
          // few values so that inessential arguments actually occur
          e = static_cast<Element>(rng() % 3 == 0 ? rng() % m : 0);
        }
        CHECK(essential_arity(OpTable(m, n, v)) == oracle::essential_arity(v, m, n));
      }
    }
  }
  CHECK(essential_arity(OpTable::projection(3, 3, 2)) == 1);
  CHECK(essential_arity(OpTable::constant(2, 3, 1)) == 0);
}

TEST_CASE("z2-plus and z2-plus-maj are term equivalent", "[bounds][equivalence]") {
  auto r = clone_equality(builtin_algebra("z2-plus"), builtin_algebra("z2-plus-maj"), 4,
                          default_budget);
  CHECK(r.verdict == EquivalenceVerdict::equivalent);
  REQUIRE(r.c1.has_value());
  REQUIRE(r.c2.has_value());
  CHECK(*r.c1 >= 1.0);
  CHECK(*r.c2 <= 2.0);
  for (auto const& row : r.rows) {
    CHECK(row.equal);
    CHECK(row.len_transfer_holds.value_or(false));
  }
}

TEST_CASE("z2-ternary-only misses the binary parity", "[bounds][equivalence]") {
  auto r = clone_equality(builtin_algebra("z2-plus"),
                          builtin_algebra("z2-ternary-only"), 2, default_budget);
  CHECK(r.verdict == EquivalenceVerdict::not_equivalent);
  REQUIRE(r.rows.size() == 2);
  auto const& row = r.rows[1];
  CHECK_FALSE(row.equal);
  REQUIRE(row.witness.has_value());
  CHECK(row.witness->side == 'A');
  CHECK(row.witness->table.to_string() == "0 1 1 0");
  CHECK(row.witness->essential_arity == 2);
  CHECK(row.only_in_b == 0);
}

TEST_CASE("an algebra is equivalent to itself with ratio one", "[bounds][equivalence]") {
  auto a = builtin_algebra("semilattice2");
  auto r = clone_equality(a, a, 3, default_budget);
  CHECK(r.verdict == EquivalenceVerdict::equivalent);
  CHECK(r.c1 == 1.0);
  CHECK(r.c2 == 1.0);
}

TEST_CASE("different universes are rejected", "[bounds][equivalence]") {
  CHECK_THROWS_AS(clone_equality(builtin_algebra("z2-plus"), builtin_algebra("z3-plus"), 2,
                                 default_budget),
                  Error);
}
