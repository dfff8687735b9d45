// cloneworks - term operations of finite algebras
//
// Balanced sums and explicit term synthesis over a designated primal basis
// (+, ·, characteristic functions chi_a, units 0 and 1).

#ifndef CLONEWORKS_PRIMAL_HPP_
#define CLONEWORKS_PRIMAL_HPP_

#include <algorithm>  // for max
#include <cstddef>    // for size_t
#include <optional>   // for optional
#include <string>     // for string
#include <utility>    // for pair
#include <vector>     // for vector

#include "algebra.hpp"
#include "bounds.hpp"
#include "clone.hpp"
#include "error.hpp"
#include "term.hpp"

namespace cloneworks {

  //! Smallest k with 2^k >= x, for x >= 1.
  inline std::size_t ceil_log2(BigInt const& x) {
    if (x <= 0) {
      throw Error("ceil_log2 of a non-positive number");
    }
    std::size_t k = 0;
    BigInt      p = 1;
    while (p < x) {
      p <<= 1;
      ++k;
    }
    return k;
  }

  namespace detail {
    inline Term sigma_over(OperationSymbol const& t,
                           std::size_t            first,
                           std::size_t            count) {
      if (count == 1) {
        return Term::var(first);
      }
      std::size_t const left = (count + 1) / 2;
      return Term::app(t, {sigma_over(t, first, left),
                           sigma_over(t, first + left, count - left)});
    }
  }  // namespace detail

  //! The balanced sum sigma_n = t(sigma_ceil(n/2)(x_1..), sigma_floor(n/2)(..x_n)),
  //! sigma_1 = x_1. Its height is ceil(log2 n).
  inline Term build_sigma(OperationSymbol const& t, std::size_t n) {
    if (t.arity != 2) {
      throw TermError("balanced sums need a binary symbol, '" + t.name
                      + "' has arity " + std::to_string(t.arity));
    }
    if (n == 0) {
      throw TermError("balanced sums need n >= 1");
    }
    return detail::sigma_over(t, 1, n);
  }

  //! The first (position, x) where sigma_n(0,..,0,x,0,..,0) != x, with x
  //! in position i (1-based) and `zero` elsewhere; nullopt if sigma_n
  //! absorbs the zeros at every position.
  inline std::optional<std::pair<std::size_t, Element>>
  sigma_absorption_failure(FiniteAlgebra const&   alg,
                           OperationSymbol const& plus,
                           Element                zero,
                           std::size_t            n) {
    CompiledTerm         program(alg, build_sigma(plus, n));
    std::vector<Element> args(n, zero);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t x = 0; x < alg.universe_size(); ++x) {
        args[i] = static_cast<Element>(x);
        if (program(args) != x) {
          return std::pair{i + 1, static_cast<Element>(x)};
        }
      }
      args[i] = zero;
    }
    return std::nullopt;
  }

  //! A validated primal basis with minimal-height constant terms.
  struct PrimalBasis {
    FiniteAlgebra            algebra;
    OperationSymbol          plus;
    OperationSymbol          times;
    std::vector<std::string> chi;  // chi[a] names the unary chi_a
    Element                  zero = 0;
    Element                  one  = 0;
    std::vector<Term>        constant_terms;  // unary, constant_terms[a] == a
    std::size_t              s = 0;           // max height of constant_terms
  };

  namespace detail {
    inline Operation const& designated(FiniteAlgebra const& alg,
                                       std::string const&   role) {
      auto name = alg.designation(role);
      if (!name) {
        throw InvalidBasis("missing designation '" + role + "'");
      }
      return *alg.find(*name);
    }

    inline Element designated_element(FiniteAlgebra const& alg,
                                      std::string const&   role) {
      auto const& op = designated(alg, role);
      if (!op.table.is_constant()) {
        throw InvalidBasis("designation '" + role + "' names '"
                           + op.symbol.name + "', which is not constant");
      }
      return op.table[0];
    }

    [[noreturn]] inline void identity_fails(std::string const& identity,
                                            std::size_t        x) {
      throw InvalidBasis("identity " + identity + " fails at x = "
                         + std::to_string(x));
    }
  }  // namespace detail

  //! Check every hypothesis of the basis on the tables and pick
  //! minimal-height terms for the unary constants.
  inline PrimalBasis validate_basis(FiniteAlgebra const& alg,
                                    std::size_t budget = default_budget) {
    std::size_t const m     = alg.universe_size();
    auto const&       plus  = detail::designated(alg, "plus");
    auto const&       times = detail::designated(alg, "times");
    if (plus.symbol.arity != 2) {
      throw InvalidBasis("plus must be binary");
    }
    if (times.symbol.arity != 2) {
      throw InvalidBasis("times must be binary");
    }
    Element const zero = detail::designated_element(alg, "zero");
    Element const one  = detail::designated_element(alg, "one");

    auto bin = [m](OpTable const& t, std::size_t x, std::size_t y) {
      return t[x * m + y];
    };
    for (std::size_t x = 0; x < m; ++x) {
      if (bin(plus.table, x, zero) != x) {
        detail::identity_fails("x+0 = x", x);
      }
      if (bin(plus.table, zero, x) != x) {
        detail::identity_fails("0+x = x", x);
      }
      if (bin(times.table, x, one) != x) {
        detail::identity_fails("x*1 = x", x);
      }
      if (bin(times.table, x, zero) != zero) {
        detail::identity_fails("x*0 = 0", x);
      }
    }
    std::vector<std::string> chi;
    for (std::size_t a = 0; a < m; ++a) {
      auto const& op = detail::designated(alg, "chi" + std::to_string(a));
      if (op.symbol.arity != 1) {
        throw InvalidBasis("chi" + std::to_string(a)
                           + " must name a unary basic operation");
      }
      for (std::size_t x = 0; x < m; ++x) {
        if (op.table[x] != (x == a ? one : zero)) {
          detail::identity_fails(
              "chi" + std::to_string(a) + "(x) = (x == " + std::to_string(a)
                  + " ? 1 : 0)",
              x);
        }
      }
      chi.push_back(op.symbol.name);
    }

    CloneTable unary = close_by_height(alg, 1, budget);
    std::vector<Term> constants;
    std::size_t       s = 0;
    for (std::size_t a = 0; a < m; ++a) {
      auto const* e
          = unary.find(OpTable::constant(m, 1, static_cast<Element>(a)));
      if (e == nullptr) {
        throw InvalidBasis("the unary constant " + std::to_string(a)
                           + " is not a term operation"
                           + (unary.complete() ? std::string()
                                               : " within the budget"));
      }
      constants.push_back(e->min_height_term);
      s = std::max(s, e->layer);
    }
    return PrimalBasis{alg,  plus.symbol, times.symbol,         std::move(chi),
                       zero, one,         std::move(constants), s};
  }

  //! ceil(log2 m^n) + 1 + max(s, n): the height certificate of a
  //! synthesized n-ary term.
  inline std::size_t synthesis_height_bound(std::size_t m,
                                            std::size_t n,
                                            std::size_t s) {
    return ceil_log2(big_pow(BigInt(m), n)) + 1 + std::max(s, n);
  }

  //! The product chi_{a_1}(x_1) · ... · chi_{a_n}(x_n), left associated.
  inline Term chi_product(PrimalBasis const&       basis,
                          std::span<Element const> alpha) {
    auto chi = [&](std::size_t i) {
      return Term::app({basis.chi[alpha[i]], 1}, {Term::var(i + 1)});
    };
    Term acc = chi(0);
    for (std::size_t i = 1; i < alpha.size(); ++i) {
      acc = Term::app(basis.times, {acc, chi(i)});
    }
    return acc;
  }

  //! A term inducing `target`: the balanced plus-sum, over all argument
  //! tuples in lexicographic order, of c_{f(alpha)} · chi-product(alpha).
  //!
  //! Every summand has height 1 + max(s, n) and the sum adds
  //! ceil(log2 m^n), so the result meets synthesis_height_bound.
  inline Term synthesize_term(PrimalBasis const& basis, OpTable const& target) {
    std::size_t const m = basis.algebra.universe_size();
    std::size_t const n = target.arity();
    if (target.universe_size() != m) {
      throw Error("target table is over a different universe");
    }
    if (n == 0) {
      throw Error("synthesis needs arity >= 1");
    }
    std::vector<Term>    summands;
    std::vector<Element> alpha(n, 0);
    summands.reserve(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
      summands.push_back(Term::app(
          basis.times,
          {basis.constant_terms[target[i]], chi_product(basis, alpha)}));
      next_tuple(alpha, m);
    }
    return substitute(build_sigma(basis.plus, summands.size()), summands);
  }

  enum class PrimalityStatus { primal, not_primal, inconclusive };

  struct PrimalityRow {
    std::size_t     n = 0;
    PrimalityStatus status = PrimalityStatus::inconclusive;
    std::size_t     fs = 0;        // clone size (complete) or tables explored
    BigInt          all_functions;  // m^(m^n)
  };

  //! For each n <= n_max, whether every n-ary operation is a term operation.
  inline std::vector<PrimalityRow> primality_probe(FiniteAlgebra const& alg,
                                                   std::size_t n_max,
                                                   std::size_t budget) {
    std::vector<PrimalityRow> rows;
    std::size_t const         m = alg.universe_size();
    for (std::size_t n = 1; n <= n_max; ++n) {
      PrimalityRow row;
      row.n             = n;
      row.all_functions = big_pow(BigInt(m), detail::checked_pow(m, n));
      CloneTable clone  = close_by_height(alg, n, budget);
      row.fs            = clone.size();
      if (clone.complete()) {
        row.status = BigInt(clone.size()) == row.all_functions
                         ? PrimalityStatus::primal
                         : PrimalityStatus::not_primal;
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_PRIMAL_HPP_
