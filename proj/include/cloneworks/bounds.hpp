// cloneworks - term operations of finite algebras
//
// The complexity sequences Fs, Ht and Len, the general inequalities that
// relate them, and empirical comparison of two algebras on one universe.

#ifndef CLONEWORKS_BOUNDS_HPP_
#define CLONEWORKS_BOUNDS_HPP_

#include <algorithm>  // for max, min
#include <cmath>      // for log2
#include <cstddef>    // for size_t
#include <cstdint>    // for uint64_t
#include <optional>   // for optional
#include <string>     // for string
#include <vector>     // for vector

#include <boost/multiprecision/cpp_int.hpp>

#include "algebra.hpp"
#include "clone.hpp"
#include "term.hpp"

namespace cloneworks {

  using BigInt = boost::multiprecision::cpp_int;

  inline BigInt big_pow(BigInt base, std::uint64_t exp) {
    BigInt result = 1;
    while (exp != 0) {
      if ((exp & 1U) != 0) {
        result *= base;
      }
      base *= base;
      exp >>= 1U;
    }
    return result;
  }

  //! One row of the sequences; fs/ht/len are meaningful only when complete.
  struct SequenceRow {
    std::size_t   n        = 0;
    bool          complete = false;
    std::size_t   fs       = 0;
    std::size_t   ht       = 0;
    std::uint64_t len      = 0;
    std::size_t   explored = 0;  // tables stored before the budget ran out
  };

  //! A complete clone with lengths, or std::nullopt when the budget ran out.
  struct ArityResult {
    SequenceRow               row;
    std::optional<CloneTable> clone;
  };

  inline ArityResult compute_arity(FiniteAlgebra const& alg,
                                   std::size_t          n,
                                   std::size_t          budget) {
    CloneTable  clone = close_by_height(alg, n, budget);
    SequenceRow row;
    row.n        = n;
    row.explored = clone.size();
    row.complete = clone.complete();
    if (!clone.complete()) {
      return {row, std::nullopt};
    }
    clone   = assign_min_lengths(alg, std::move(clone));
    row.fs  = clone.size();
    row.ht  = clone.max_height();
    row.len = clone.max_length();
    return {row, std::move(clone)};
  }

  //! Fs(n), Ht(n), Len(n) for n = 1..n_max.
  inline std::vector<SequenceRow> complexity_sequences(FiniteAlgebra const& alg,
                                                       std::size_t n_max,
                                                       std::size_t budget) {
    if (n_max == 0) {
      throw Error("max arity must be at least 1");
    }
    std::vector<SequenceRow> rows;
    for (std::size_t n = 1; n <= n_max; ++n) {
      rows.push_back(compute_arity(alg, n, budget).row);
    }
    return rows;
  }

  struct BoundCheck {
    std::string name;
    BigInt      lhs;
    BigInt      rhs;
    bool        strict = false;  // lhs < rhs rather than lhs <= rhs
    bool        pass   = false;
    bool        implied = false;  // reported, not independently checked

    [[nodiscard]] BigInt slack() const {
      return rhs - lhs;
    }
  };

  struct BoundsRow {
    SequenceRow             seq;
    std::vector<BoundCheck> checks;
  };

  struct BoundsReport {
    std::string            algebra;
    std::size_t            symbol_count = 0;  // r
    std::size_t            max_arity    = 0;
    std::vector<BoundsRow> rows;

    //! True iff every row is complete and every check passes.
    [[nodiscard]] bool all_pass() const {
      for (auto const& row : rows) {
        if (!row.seq.complete) {
          return false;
        }
        for (auto const& c : row.checks) {
          if (!c.pass) {
            return false;
          }
        }
      }
      return true;
    }

    [[nodiscard]] bool any_failure() const {
      for (auto const& row : rows) {
        for (auto const& c : row.checks) {
          if (!c.pass) {
            return true;
          }
        }
      }
      return false;
    }

    [[nodiscard]] bool any_incomplete() const {
      for (auto const& row : rows) {
        if (!row.seq.complete) {
          return true;
        }
      }
      return false;
    }
  };

  //! The general inequalities for one complete row:
  //!   Fs < (n + r + 1)^Len, Ht <= Fs, Ht <= Len,
  //!   Len <= 1 + mbar + ... + mbar^Ht <= (mbar + 1)^Ht.
  //! The logarithmic variant of the first one has an unspecified constant and
  //! is recorded as implied by it.
  inline std::vector<BoundCheck> general_bound_checks(SequenceRow const& row,
                                                      std::size_t        r,
                                                      std::size_t        mbar) {
    std::vector<BoundCheck> checks;
    auto add = [&](std::string name, BigInt lhs, BigInt rhs, bool strict) {
      BoundCheck c{std::move(name), std::move(lhs), std::move(rhs), strict};
      c.pass = strict ? c.lhs < c.rhs : c.lhs <= c.rhs;
      checks.push_back(std::move(c));
    };
    BigInt const fs  = row.fs;
    BigInt const ht  = row.ht;
    BigInt const len = row.len;
    add("fs_lt_pow_len", fs, big_pow(BigInt(row.n + r + 1), row.len), true);
    {
      BoundCheck implied = checks.back();
      implied.name       = "fs_le_exp_log_len";
      implied.implied    = true;
      checks.push_back(implied);
    }
    add("ht_le_fs", ht, fs, false);
    add("ht_le_len", ht, len, false);
    BigInt geometric = 0;
    for (std::size_t i = 0; i <= row.ht; ++i) {
      geometric += big_pow(BigInt(mbar), i);
    }
    add("len_le_geometric_sum", len, geometric, false);
    add("geometric_sum_le_pow", geometric, big_pow(BigInt(mbar + 1), row.ht),
        false);
    return checks;
  }

  inline BoundsReport verify_general_bounds(FiniteAlgebra const& alg,
                                            std::size_t          n_max,
                                            std::size_t          budget) {
    BoundsReport report;
    report.algebra      = alg.name();
    report.symbol_count = alg.symbol_count();
    report.max_arity    = alg.max_arity();
    for (auto const& row : complexity_sequences(alg, n_max, budget)) {
      BoundsRow br{row, {}};
      if (row.complete) {
        br.checks
            = general_bound_checks(row, report.symbol_count, report.max_arity);
      }
      report.rows.push_back(std::move(br));
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Term equivalence
  ////////////////////////////////////////////////////////////////////////

  //! Essential arity: the number of argument positions the operation depends
  //! on.
  inline std::size_t essential_arity(OpTable const& t) {
    std::size_t const m = t.universe_size();
    std::size_t const n = t.arity();
    std::size_t       count = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t const stride = detail::checked_pow(m, n - i);
      bool              depends = false;
      for (std::size_t idx = 0; idx < t.size() && !depends; ++idx) {
        if ((idx / stride) % m != 0) {
          continue;
        }
        for (std::size_t v = 1; v < m; ++v) {
          if (t[idx + v * stride] != t[idx]) {
            depends = true;
            break;
          }
        }
      }
      count += depends ? 1 : 0;
    }
    return count;
  }

  struct EquivalenceWitness {
    OpTable     table;
    char        side;  // 'A' or 'B': the clone that contains the table
    Term        term;  // minimal-height term in that clone
    std::size_t essential_arity;
  };

  struct EquivalenceRow {
    std::size_t                       n        = 0;
    bool                              complete = false;
    bool                              equal    = false;
    std::size_t                       only_in_a = 0;
    std::size_t                       only_in_b = 0;
    SequenceRow                       a;
    SequenceRow                       b;
    std::optional<EquivalenceWitness> witness;
    // Len_A(n) <= 2^(d * Len_B(n)) with the measured d
    std::optional<bool>               len_transfer_holds;
  };

  enum class EquivalenceVerdict { equivalent, not_equivalent, inconclusive };

  struct EquivalenceReport {
    std::string                 algebra_a;
    std::string                 algebra_b;
    EquivalenceVerdict          verdict = EquivalenceVerdict::inconclusive;
    std::optional<std::size_t>  first_difference;
    std::vector<EquivalenceRow> rows;
    // Ht_A(n) / Ht_B(n) extremes over rows with equal clones and Ht_B > 0
    std::optional<double>       c1;
    std::optional<double>       c2;
    std::optional<double>       d;  // c2 * log2(mbar_A + 1)
  };

  //! Compare the clones of two algebras on the same universe for
  //! n = 1..n_max.
  //!
  //! Where clones differ, the reported witness is a table found in only one
  //! of them, preferring the largest essential arity and then the byte
  //! order, so that a difference inherited from lower arities does not mask
  //! one that genuinely needs all n arguments.
  inline EquivalenceReport clone_equality(FiniteAlgebra const& a,
                                          FiniteAlgebra const& b,
                                          std::size_t          n_max,
                                          std::size_t          budget) {
    if (a.universe_size() != b.universe_size()) {
      throw Error("algebras must share a universe");
    }
    if (n_max == 0) {
      throw Error("max arity must be at least 1");
    }
    EquivalenceReport report;
    report.algebra_a = a.name();
    report.algebra_b = b.name();
    bool any_incomplete = false;

    for (std::size_t n = 1; n <= n_max; ++n) {
      auto           ra = compute_arity(a, n, budget);
      auto           rb = compute_arity(b, n, budget);
      EquivalenceRow row;
      row.n        = n;
      row.a        = ra.row;
      row.b        = rb.row;
      row.complete = ra.clone.has_value() && rb.clone.has_value();
      if (!row.complete) {
        any_incomplete = true;
        report.rows.push_back(std::move(row));
        continue;
      }
      auto const& ca = *ra.clone;
      auto const& cb = *rb.clone;
      std::optional<EquivalenceWitness> best;
      auto consider = [&](CloneTable const& from, CloneTable const& other,
                          char side, std::size_t& counter) {
        for (auto idx : from.canonical_order()) {
          auto const& e = from.entries()[idx];
          if (other.contains(e.table)) {
            continue;
          }
          ++counter;
          std::size_t ess = essential_arity(e.table);
          if (!best || ess > best->essential_arity
              || (ess == best->essential_arity
                  && e.table.bytes() < best->table.bytes())) {
            best = EquivalenceWitness{e.table, side, e.min_height_term, ess};
          }
        }
      };
      consider(ca, cb, 'A', row.only_in_a);
      consider(cb, ca, 'B', row.only_in_b);
      row.equal   = !best.has_value();
      row.witness = std::move(best);
      if (!row.equal && !report.first_difference) {
        report.first_difference = n;
      }
      report.rows.push_back(std::move(row));
    }

    if (report.first_difference) {
      report.verdict = EquivalenceVerdict::not_equivalent;
    } else if (any_incomplete) {
      report.verdict = EquivalenceVerdict::inconclusive;
    } else {
      report.verdict = EquivalenceVerdict::equivalent;
    }

    if (report.verdict == EquivalenceVerdict::equivalent) {
      for (auto const& row : report.rows) {
        if (row.b.ht == 0) {
          continue;
        }
        double ratio = static_cast<double>(row.a.ht)
                       / static_cast<double>(row.b.ht);
        report.c1 = report.c1 ? std::min(*report.c1, ratio) : ratio;
        report.c2 = report.c2 ? std::max(*report.c2, ratio) : ratio;
      }
      double const c2 = report.c2.value_or(1.0);
      report.d = c2 * std::log2(static_cast<double>(a.max_arity() + 1));
      for (auto& row : report.rows) {
        // compare log2 of both sides to stay in range
        row.len_transfer_holds = std::log2(static_cast<double>(row.a.len))
                              <= *report.d * static_cast<double>(row.b.len)
                                     + 1e-12;
      }
    }
    return report;
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_BOUNDS_HPP_
