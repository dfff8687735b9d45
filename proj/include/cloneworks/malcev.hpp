// cloneworks - term operations of finite algebras
//
// Mal'cev terms, the strong cube terms built from them, and the
// supernilpotency check through the cube-term identity on polynomial
// operations.
//
// Argument order of q_n. Argument j (0 <= j <= 2^n - 2) of q_n takes the
// tuple whose i-th block is b_i when bit i - 1 of j is set and a_i
// otherwise. Argument 0 is t(a_1, ..., a_n), argument 1 is
// t(b_1, a_2, ..., a_n), the last is t(a_1, b_2, ..., b_n), and the omitted
// index 2^n - 1 (all b) is the value the identity predicts.

#ifndef CLONEWORKS_MALCEV_HPP_
#define CLONEWORKS_MALCEV_HPP_

#include <cstddef>   // for size_t
#include <cstdint>   // for uint64_t
#include <optional>  // for optional
#include <random>    // for mt19937_64
#include <string>    // for string
#include <vector>    // for vector

#include "algebra.hpp"
#include "bounds.hpp"
#include "clone.hpp"
#include "error.hpp"
#include "term.hpp"

namespace cloneworks {

  //! q(x, y, y) = x and q(y, y, x) = x for all x, y.
  inline bool is_malcev_table(OpTable const& q) {
    if (q.arity() != 3) {
      return false;
    }
    std::size_t const m = q.universe_size();
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        if (q[(x * m + y) * m + y] != x || q[(y * m + y) * m + x] != x) {
          return false;
        }
      }
    }
    return true;
  }

  struct MalcevCertificate {
    Term        term;  // ternary
    std::size_t height = 0;
  };

  enum class SearchStatus { found, none, inconclusive };

  struct MalcevSearch {
    SearchStatus                     status = SearchStatus::inconclusive;
    std::optional<MalcevCertificate> certificate;
    std::size_t                      clone_size = 0;  // |Clo_3| or explored
    bool                             complete   = false;
  };

  //! The minimal-height ternary term operation satisfying the Mal'cev
  //! identities, searched in Clo_3 in discovery order.
  inline MalcevSearch find_malcev_term(FiniteAlgebra const& alg,
                                       std::size_t          budget) {
    CloneTable   clone = close_by_height(alg, 3, budget);
    MalcevSearch result;
    result.clone_size = clone.size();
    result.complete   = clone.complete();
    // entries are stored layer by layer, so the first hit has least height
    for (auto const& e : clone.entries()) {
      if (is_malcev_table(e.table)) {
        result.status      = SearchStatus::found;
        result.certificate = MalcevCertificate{e.min_height_term, e.layer};
        return result;
      }
    }
    result.status
        = clone.complete() ? SearchStatus::none : SearchStatus::inconclusive;
    return result;
  }

  //! A certificate from the algebra's `malcev` designation, verified on its
  //! table.
  inline std::optional<MalcevCertificate>
  designated_malcev(FiniteAlgebra const& alg) {
    auto name = alg.designation("malcev");
    if (!name) {
      return std::nullopt;
    }
    auto const* op = alg.find(*name);
    if (op->symbol.arity != 3 || !is_malcev_table(op->table)) {
      throw InvalidBasis("designated malcev operation '" + *name
                         + "' violates q(x,y,y) = x = q(y,y,x)");
    }
    Term t = Term::app(op->symbol, {Term::var(1), Term::var(2), Term::var(3)});
    return MalcevCertificate{t, 1};
  }

  //! The designated Mal'cev operation if any, otherwise a search.
  inline MalcevSearch obtain_malcev(FiniteAlgebra const& alg,
                                    std::size_t          budget) {
    if (auto d = designated_malcev(alg)) {
      MalcevSearch r;
      r.status      = SearchStatus::found;
      r.certificate = *d;
      r.complete    = true;
      return r;
    }
    return find_malcev_term(alg, budget);
  }

  struct CubeTerm {
    std::size_t       n = 0;
    Term              term;  // arity 2^n - 1
    MalcevCertificate built_from;

    [[nodiscard]] std::size_t arity() const noexcept {
      return (std::size_t{1} << n) - 1;
    }
  };

  //! q_2(x, y, z) = q(y, x, z) and
  //! q_{n+1}(x_0..x_{2^{n+1}-2}) =
  //!     q_2(q_n(x_0..x_{2^n-2}), x_{2^n-1}, q_n(x_{2^n}..x_{2^{n+1}-2})).
  //! Variables are 1-based, so x_i above is the term variable x_{i+1}.
  inline CubeTerm build_cube_term(MalcevCertificate const& q, std::size_t n) {
    if (n < 2) {
      throw Error("cube terms start at n = 2");
    }
    if (n >= 8 * sizeof(std::size_t) - 1) {
      throw Error("cube term arity overflows");
    }
    std::vector<Term> swap{Term::var(2), Term::var(1), Term::var(3)};
    Term const        q2 = substitute(q.term, swap);
    Term              qn = q2;
    for (std::size_t level = 2; level < n; ++level) {
      std::size_t const half = (std::size_t{1} << level) - 1;  // arity of q_n
      std::vector<Term> right;
      right.reserve(half);
      for (std::size_t i = 0; i < half; ++i) {
        right.push_back(Term::var(half + 2 + i));
      }
      Term shifted = substitute(qn, right);
      qn = substitute(q2, std::vector<Term>{qn, Term::var(half + 1), shifted});
    }
    return CubeTerm{n, qn, q};
  }

  //! Evaluates a cube term fast: through its table when that is small,
  //! otherwise through a compiled program.
  class CubeEvaluator {
   public:
    CubeEvaluator(FiniteAlgebra const& alg, CubeTerm const& q)
        : _m(alg.universe_size()), _program(alg, q.term) {
      std::size_t const arity = q.arity();
      BigInt const      size  = big_pow(BigInt(_m), arity);
      if (size <= (1U << 20)) {
        _table = induced_table(alg, q.term, arity);
      }
    }

    Element operator()(std::span<Element const> args) {
      if (_table) {
        std::size_t idx = 0;
        for (auto a : args) {
          idx = idx * _m + a;
        }
        return (*_table)[idx];
      }
      return _program(args);
    }

   private:
    std::size_t            _m;
    CompiledTerm           _program;
    std::optional<OpTable> _table;
  };

  struct CubeIdentityFailure {
    std::size_t position = 0;  // 1-based block i
    Element     x        = 0;
    Element     y        = 0;
  };

  //! The projection instances of the cube identities: for every block i and
  //! all x, y, q_n(c_0..c_{2^n-2}) = y where c_j = y if bit i-1 of j is set
  //! and x otherwise. For q_2 these are q_2(x,y,x) = y and q_2(x,x,y) = y.
  inline std::optional<CubeIdentityFailure>
  cube_identity_failure(FiniteAlgebra const& alg, CubeTerm const& q) {
    std::size_t const    m = alg.universe_size();
    CompiledTerm         program(alg, q.term);
    std::vector<Element> args(q.arity());
    for (std::size_t i = 1; i <= q.n; ++i) {
      for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) {
          for (std::size_t j = 0; j < args.size(); ++j) {
            args[j] = static_cast<Element>(((j >> (i - 1)) & 1U) != 0 ? y : x);
          }
          if (program(args) != y) {
            return CubeIdentityFailure{i, static_cast<Element>(x),
                                       static_cast<Element>(y)};
          }
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Supernilpotency
  ////////////////////////////////////////////////////////////////////////

  enum class SpnStatus { holds, fails, inconclusive };

  struct SpnWitness {
    OpTable              polynomial;
    Term                 polynomial_term;  // over the algebra with constants
    std::vector<Element> a;
    std::vector<Element> b;
    std::vector<Element> cube_arguments;
    Element              lhs = 0;  // q_n(...)
    Element              rhs = 0;  // t(b)
  };

  struct SpnVerdict {
    std::size_t               degree = 0;
    SpnStatus                 status = SpnStatus::inconclusive;
    std::optional<SpnWitness> witness;
    std::size_t               polynomial_operations = 0;
    std::uint64_t             instances_checked     = 0;
    bool                      complete_enumeration  = false;
    std::optional<MalcevCertificate> malcev;
    std::optional<CubeTerm>          cube;
    std::string               note;
  };

  //! The values t(c_j) for j = 0..2^n - 1, with c_j built by the bit
  //! convention from a and b; the last entry is t(b).
  inline std::vector<Element> cube_values(OpTable const&           t,
                                          std::span<Element const> a,
                                          std::span<Element const> b) {
    std::size_t const    n     = t.arity();
    std::size_t const    count = std::size_t{1} << n;
    std::size_t const    m     = t.universe_size();
    std::vector<Element> out(count);
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < n; ++i) {
        idx = idx * m + (((j >> i) & 1U) != 0 ? b[i] : a[i]);
      }
      out[j] = t[idx];
    }
    return out;
  }

  //! Checks q_{k+1}(t(c_0), ..., t(c_{2^{k+1}-2})) = t(b) for every
  //! (k+1)-ary polynomial operation t and all a, b in A^{k+1}.
  //!
  //! Polynomial operations are enumerated semantically as the closure of
  //! the projections and constants. The first failure in enumeration order
  //! (operations in discovery order, then a, then b lexicographically) is
  //! the reported witness.
  inline SpnVerdict check_supernilpotent(
      FiniteAlgebra const&             alg,
      std::size_t                      k,
      std::size_t                      budget,
      std::optional<MalcevCertificate> q = std::nullopt) {
    if (k == 0) {
      throw Error("supernilpotency degree must be at least 1");
    }
    SpnVerdict verdict;
    verdict.degree = k;
    if (!q) {
      auto search = obtain_malcev(alg, budget);
      if (search.status != SearchStatus::found) {
        verdict.status = SpnStatus::inconclusive;
        verdict.note   = search.status == SearchStatus::none
                             ? "no Mal'cev term exists"
                             : "Mal'cev search exceeded the budget";
        return verdict;
      }
      q = search.certificate;
    }
    verdict.malcev = q;
    std::size_t const n = k + 1;
    CubeTerm const    cube = build_cube_term(*q, n);
    verdict.cube           = cube;
    CubeEvaluator eval(alg, cube);

    FiniteAlgebra const expanded = alg.with_constants();
    CloneTable const    polys    = close_by_height(expanded, n, budget);
    verdict.polynomial_operations = polys.size();
    verdict.complete_enumeration  = polys.complete();

    std::size_t const    m = alg.universe_size();
    std::vector<Element> ab(2 * n, 0);
    for (auto const& e : polys.entries()) {
      std::fill(ab.begin(), ab.end(), Element{0});
      do {
        std::span<Element const> a(ab.data(), n);
        std::span<Element const> b(ab.data() + n, n);
        auto        vals = cube_values(e.table, a, b);
        Element     rhs  = vals.back();
        std::span<Element const> args(vals.data(), vals.size() - 1);
        Element lhs = eval(args);
        ++verdict.instances_checked;
        if (lhs != rhs) {
          verdict.status  = SpnStatus::fails;
          verdict.witness = SpnWitness{e.table,
                                       e.min_height_term,
                                       {a.begin(), a.end()},
                                       {b.begin(), b.end()},
                                       {args.begin(), args.end()},
                                       lhs,
                                       rhs};
          return verdict;
        }
      } while (next_tuple(ab, m));
    }
    verdict.status
        = polys.complete() ? SpnStatus::holds : SpnStatus::inconclusive;
    if (!polys.complete()) {
      verdict.note = "polynomial enumeration exceeded the budget";
    }
    return verdict;
  }

  ////////////////////////////////////////////////////////////////////////
  // Mal'cev chains and the commutator example
  ////////////////////////////////////////////////////////////////////////

  //! t_0 = x_1, t_k(x_1..x_{2k+1}) = q(t_{k-1}(x_1..x_{2k-1}), x_{2k}, x_{2k+1}).
  inline Term malcev_chain(MalcevCertificate const& q, std::size_t k) {
    Term t = Term::var(1);
    for (std::size_t i = 1; i <= k; ++i) {
      t = substitute(q.term,
                     std::vector<Term>{t, Term::var(2 * i), Term::var(2 * i + 1)});
    }
    return t;
  }

  //! The first l in 0..2k+1 where t_k(a,..,a,b,..,b) with l trailing b's
  //! is not a for even l and b for odd l.
  inline std::optional<std::size_t> chain_parity_failure(
      FiniteAlgebra const& alg, Term const& chain, std::size_t k, Element a,
      Element b) {
    CompiledTerm         program(alg, chain);
    std::size_t const    arity = 2 * k + 1;
    std::vector<Element> args(arity);
    for (std::size_t l = 0; l <= arity; ++l) {
      for (std::size_t i = 0; i < arity; ++i) {
        args[i] = i + l >= arity ? b : a;
      }
      if (program(args) != (l % 2 == 0 ? a : b)) {
        return l;
      }
    }
    return std::nullopt;
  }

  struct CommutatorGrowth {
    std::size_t   n                        = 0;
    std::uint64_t len_expanded             = 0;
    std::uint64_t len_commutator_signature = 0;
    std::size_t   height_expanded          = 0;
    std::size_t   height_commutator        = 0;
    std::size_t   samples                  = 0;
    bool          agree                    = true;
  };

  //! Iterated commutator [..[[x_1, x_2], x_3].., x_n] as a term over `comm`.
  inline Term iterated_commutator(OperationSymbol const& comm, std::size_t n) {
    Term t = Term::var(1);
    for (std::size_t i = 2; i <= n; ++i) {
      t = Term::app(comm, {t, Term::var(i)});
    }
    return t;
  }

  //! The same function with [x, y] expanded to ((x^-1 · y^-1) · x) · y.
  inline Term expanded_commutator(OperationSymbol const& mul,
                                  OperationSymbol const& inv,
                                  std::size_t            n) {
    Term t = Term::var(1);
    for (std::size_t i = 2; i <= n; ++i) {
      Term y = Term::var(i);
      t      = Term::app(
          mul,
          {Term::app(mul, {Term::app(mul, {Term::app(inv, {t}),
                                           Term::app(inv, {y})}),
                           t}),
           y});
    }
    return t;
  }

  //! Compares the iterated commutator over `with_comm` with its expansion
  //! over `group` at `samples` seeded random assignments.
  inline CommutatorGrowth commutator_growth_demo(FiniteAlgebra const& group,
                                                 FiniteAlgebra const& with_comm,
                                                 std::size_t          n,
                                                 std::size_t          samples,
                                                 std::uint64_t        seed) {
    if (n == 0) {
      throw Error("commutator demo needs n >= 1");
    }
    auto const* mul  = group.find("mul");
    auto const* inv  = group.find("inv");
    auto const* comm = with_comm.find("comm");
    if (mul == nullptr || inv == nullptr || comm == nullptr) {
      throw Error("commutator demo needs 'mul', 'inv' and 'comm' operations");
    }
    Term const expanded = expanded_commutator(mul->symbol, inv->symbol, n);
    Term const compact  = iterated_commutator(comm->symbol, n);

    CommutatorGrowth g;
    g.n                        = n;
    g.len_expanded             = expanded.length();
    g.len_commutator_signature = compact.length();
    g.height_expanded          = expanded.height();
    g.height_commutator        = compact.height();
    g.samples                  = samples;

    CompiledTerm         pe(group, expanded);
    CompiledTerm         pc(with_comm, compact);
    std::mt19937_64      rng(seed);
    std::vector<Element> assignment(n);
    std::size_t const    m = group.universe_size();
    for (std::size_t s = 0; s < samples; ++s) {
      for (auto& v : assignment) {
        v = static_cast<Element>(rng() % m);
      }
      if (pe(assignment) != pc(assignment)) {
        g.agree = false;
        break;
      }
    }
    return g;
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_MALCEV_HPP_
