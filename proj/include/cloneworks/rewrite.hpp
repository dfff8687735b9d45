// cloneworks - term operations of finite algebras
//
// Height reduction and generator decomposition in supernilpotent Mal'cev
// algebras, both driven by the cube-term identity
//
//   f(x_1, ..., x_k) = q_k(f(c_0), ..., f(c_{2^k - 2}))
//
// where x_i are blocks of variables and c_j replaces the blocks whose bit is
// clear in j by a repeated variable (see malcev.hpp for the bit order). The
// identity holds for every term f exactly when the algebra is
// supernilpotent of degree k - 1, so both procedures verify their output
// and report a mismatch as a counterexample to the assumed degree.

#ifndef CLONEWORKS_REWRITE_HPP_
#define CLONEWORKS_REWRITE_HPP_

#include <cmath>          // for log
#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t
#include <map>            // for map
#include <optional>       // for optional
#include <random>         // for mt19937_64
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <vector>         // for vector

#include "algebra.hpp"
#include "bounds.hpp"
#include "clone.hpp"
#include "error.hpp"
#include "malcev.hpp"
#include "term.hpp"

namespace cloneworks {

  //! k blocks of consecutive items: with L = qk + r, the first r blocks have
  //! q + 1 items and the rest q.
  struct VariableGrouping {
    std::vector<std::vector<std::size_t>> groups;
  };

  inline VariableGrouping make_grouping(std::vector<std::size_t> const& items,
                                        std::size_t                     k) {
    if (k == 0 || items.size() < k) {
      throw Error("cannot split " + std::to_string(items.size())
                  + " variables into " + std::to_string(k) + " groups");
    }
    std::size_t const q = items.size() / k;
    std::size_t const r = items.size() % k;
    VariableGrouping  g;
    std::size_t       pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t len = q + (i < r ? 1 : 0);
      g.groups.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(pos),
                            items.begin()
                                + static_cast<std::ptrdiff_t>(pos + len));
      pos += len;
    }
    return g;
  }

  enum class VerifyMode { none, exhaustive, sample };

  struct VerifySpec {
    VerifyMode    mode    = VerifyMode::none;
    std::size_t   samples = 0;
    std::uint64_t seed    = 0;
    //! exhaustive checking is refused above this many assignments
    std::uint64_t max_exhaustive = std::uint64_t{1} << 24;
  };

  struct VerifyOutcome {
    VerifyMode    mode    = VerifyMode::none;
    std::uint64_t checked = 0;
  };

  //! Compare two n-ary terms over one algebra; throws SemanticMismatch with
  //! the first differing assignment.
  inline VerifyOutcome verify_equal(FiniteAlgebra const& alg,
                                    Term const&          expected,
                                    Term const&          actual,
                                    std::size_t          n,
                                    VerifySpec const&    spec) {
    VerifyOutcome out;
    out.mode = spec.mode;
    if (spec.mode == VerifyMode::none) {
      return out;
    }
    CompiledTerm         pe(alg, expected);
    CompiledTerm         pa(alg, actual);
    std::size_t const    m = alg.universe_size();
    std::vector<Element> tuple(n, 0);
    auto check = [&] {
      Element e = pe(tuple);
      Element a = pa(tuple);
      ++out.checked;
      if (e != a) {
        throw SemanticMismatch("rewritten term differs from the input",
                               tuple, e, a);
      }
    };
    if (spec.mode == VerifyMode::exhaustive) {
      if (big_pow(BigInt(m), n) > spec.max_exhaustive) {
        throw Error("exhaustive verification needs " + std::to_string(m) + "^"
                    + std::to_string(n) + " evaluations; use sampling");
      }
      do {
        check();
      } while (next_tuple(tuple, m));
    } else {
      std::mt19937_64 rng(spec.seed);
      for (std::size_t s = 0; s < spec.samples; ++s) {
        for (auto& v : tuple) {
          v = static_cast<Element>(rng() % m);
        }
        check();
      }
    }
    return out;
  }

  struct RewriteOptions {
    std::size_t k          = 2;  // cube term q_k, degree k - 1
    std::size_t base_arity = 4;  // n0
    double      epsilon    = 0.25;
    VerifySpec  verify;
  };

  struct RewriteCertificate {
    std::size_t   n              = 0;
    std::size_t   k              = 0;
    std::size_t   base_arity     = 0;
    double        epsilon        = 0;
    double        c              = 0;  // 1 - 1/k + epsilon
    std::size_t   input_height   = 0;
    std::size_t   output_height  = 0;
    std::uint64_t output_length  = 0;
    std::size_t   cube_height    = 0;  // he(q_k)
    std::size_t   base_height    = 0;  // Ht(n0)
    double        bound          = 0;  // he(q_k) log_{1/c} n + Ht(n0)
    bool          within_bound   = false;
    std::size_t   patterns       = 0;  // memoized identification patterns
    std::size_t   recursion_depth = 0;
    VerifyOutcome verification;
  };

  struct RewriteResult {
    Term               term;
    RewriteCertificate certificate;
  };

  //! Checks 0 < epsilon < 1/k, n0 > k and c * n0 >= 1.
  inline void validate_rewrite_options(RewriteOptions const& opt) {
    if (opt.k < 2) {
      throw Error("the rewriter needs a cube term q_k with k >= 2");
    }
    if (!(opt.epsilon > 0.0 && opt.epsilon < 1.0 / static_cast<double>(opt.k))) {
      throw Error("epsilon must lie strictly between 0 and 1/k");
    }
    if (opt.base_arity < opt.k + 2) {
      throw Error("base arity must be at least k + 2");
    }
    double const c = 1.0 - 1.0 / static_cast<double>(opt.k) + opt.epsilon;
    if (c * static_cast<double>(opt.base_arity) < 1.0) {
      throw Error("c * n0 must be at least 1");
    }
  }

  //! Rewrite an n-ary term into an equivalent one of logarithmic height.
  //!
  //! A sub-problem is the input term under an identification of variables.
  //! With more than n0 distinct variables, the live variables are split into
  //! k groups, the repeated variable y is the lowest live one, and the
  //! cube-term identity replaces the sub-problem by q_k over 2^k - 1 smaller
  //! ones. At most n0 live variables, the sub-function is looked up in the
  //! complete clone at arity n0 and its minimal-height term is used.
  //!
  //! `base` must be the complete clone of `alg` at arity n0. The result is
  //! only correct when the algebra is supernilpotent of degree k - 1;
  //! verification (if requested) turns a wrong assumption into a
  //! SemanticMismatch.
  inline RewriteResult rewrite_log_height(FiniteAlgebra const&  alg,
                                          CubeTerm const&       qk,
                                          Term const&           input,
                                          std::size_t           n,
                                          CloneTable const&     base,
                                          RewriteOptions const& opt) {
    validate_rewrite_options(opt);
    if (qk.n != opt.k) {
      throw Error("cube term degree does not match k");
    }
    if (input.max_variable() > n) {
      throw TermError("input uses x" + std::to_string(input.max_variable())
                      + " but n = " + std::to_string(n));
    }
    if (n == 0) {
      throw Error("the rewriter needs n >= 1");
    }
    if (!base.complete() || base.arity() != opt.base_arity) {
      throw Error("the rewriter needs the complete clone at the base arity");
    }
    std::size_t const m  = alg.universe_size();
    std::size_t const n0 = opt.base_arity;
    std::size_t const k  = opt.k;
    CompiledTerm      program(alg, input);

    // pattern[i] = live variable that x_{i+1} is identified with (1-based)
    using Pattern = std::vector<std::size_t>;
    std::map<Pattern, Term> memo;
    std::size_t             max_depth = 0;

    auto base_case = [&](Pattern const& pattern,
                         std::vector<std::size_t> const& live) -> Term {
      // position of each live variable among the first |live| arguments
      std::vector<std::size_t> slot(n + 1, 0);
      for (std::size_t i = 0; i < live.size(); ++i) {
        slot[live[i]] = i;
      }
      std::vector<Element> values(detail::checked_pow(m, n0));
      std::vector<Element> tuple(n0, 0);
      std::vector<Element> full(n, 0);
      for (std::size_t idx = 0; idx < values.size(); ++idx) {
        for (std::size_t i = 0; i < n; ++i) {
          full[i] = tuple[slot[pattern[i]]];
        }
        values[idx] = program(full);
        next_tuple(tuple, m);
      }
      auto const* e = base.find(OpTable(m, n0, std::move(values)));
      if (e == nullptr) {
        throw Error("internal: sub-function missing from the base clone");
      }
      std::vector<Term> subs;
      subs.reserve(n0);
      for (std::size_t i = 0; i < n0; ++i) {
        subs.push_back(Term::var(i < live.size() ? live[i] : live.front()));
      }
      return substitute(e->min_height_term, subs);
    };

    auto go = [&](auto&& self, Pattern const& pattern,
                  std::size_t depth) -> Term {
      if (auto it = memo.find(pattern); it != memo.end()) {
        return it->second;
      }
      max_depth = std::max(max_depth, depth);
      std::vector<std::size_t> live(pattern.begin(), pattern.end());
      std::sort(live.begin(), live.end());
      live.erase(std::unique(live.begin(), live.end()), live.end());
      Term result = Term::var(1);
      if (live.size() <= n0) {
        result = base_case(pattern, live);
      } else {
        auto const        grouping = make_grouping(live, k);
        std::vector<std::size_t> group_of(n + 1, 0);
        for (std::size_t g = 0; g < k; ++g) {
          for (auto v : grouping.groups[g]) {
            group_of[v] = g;
          }
        }
        std::size_t const y = live.front();
        std::vector<Term> args;
        std::size_t const count = (std::size_t{1} << k) - 1;
        args.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
          Pattern sub(pattern);
          for (auto& v : sub) {
            if (((j >> group_of[v]) & 1U) == 0) {
              v = y;
            }
          }
          args.push_back(self(self, sub, depth + 1));
        }
        result = substitute(qk.term, args);
      }
      memo.emplace(pattern, result);
      return result;
    };

    Pattern identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      identity[i] = i + 1;
    }
    Term output = go(go, identity, 0);

    RewriteCertificate cert;
    cert.n               = n;
    cert.k               = k;
    cert.base_arity      = n0;
    cert.epsilon         = opt.epsilon;
    cert.c               = 1.0 - 1.0 / static_cast<double>(k) + opt.epsilon;
    cert.input_height    = input.height();
    cert.output_height   = output.height();
    cert.output_length   = output.length();
    cert.cube_height     = qk.term.height();
    cert.base_height     = base.max_height();
    cert.bound           = static_cast<double>(cert.cube_height)
                       * (std::log(static_cast<double>(n))
                          / std::log(1.0 / cert.c))
                   + static_cast<double>(cert.base_height);
    cert.within_bound    = static_cast<double>(cert.output_height)
                        <= cert.bound + 1e-9;
    cert.patterns        = memo.size();
    cert.recursion_depth = max_depth;
    cert.verification    = verify_equal(alg, input, output, n, opt.verify);
    return {output, cert};
  }

  ////////////////////////////////////////////////////////////////////////
  // Generator decomposition
  ////////////////////////////////////////////////////////////////////////

  //! A term over the Mal'cev operation `q` and leaf operations `g<i>` of
  //! arity <= degree + 1, packaged with the algebra that interprets it.
  struct Decomposition {
    FiniteAlgebra generators;
    Term          term;
    std::size_t   leaves  = 0;  // distinct leaf operations
    std::size_t   max_leaf_arity = 0;
    std::size_t   cube_applications = 0;
  };

  namespace detail {
    //! Restrict t to the listed (1-based, increasing) argument positions;
    //! the other arguments are set to 0. Only valid when t ignores them.
    inline OpTable restrict_table(OpTable const&                  t,
                                  std::vector<std::size_t> const& keep) {
      std::size_t const    m = t.universe_size();
      std::size_t const    n = t.arity();
      std::vector<Element> values(checked_pow(m, keep.size()));
      std::vector<Element> sub(keep.size(), 0);
      std::vector<Element> full(n, 0);
      for (auto& v : values) {
        for (std::size_t i = 0; i < keep.size(); ++i) {
          full[keep[i] - 1] = sub[i];
        }
        v = t.at(full);
        next_tuple(sub, m);
      }
      return OpTable(m, keep.size(), std::move(values));
    }

    inline std::vector<std::size_t> essential_positions(OpTable const& t) {
      std::vector<std::size_t> out;
      std::size_t const        m = t.universe_size();
      std::size_t const        n = t.arity();
      for (std::size_t i = 1; i <= n; ++i) {
        std::size_t const stride = checked_pow(m, n - i);
        bool              dep    = false;
        for (std::size_t idx = 0; idx < t.size() && !dep; ++idx) {
          if ((idx / stride) % m != 0) {
            continue;
          }
          for (std::size_t v = 1; v < m && !dep; ++v) {
            dep = t[idx + v * stride] != t[idx];
          }
        }
        if (dep) {
          out.push_back(i);
        }
      }
      return out;
    }
  }  // namespace detail

  //! Express f through q_{degree+1} and operations of arity <= degree + 1.
  //!
  //! With blocks b_i = x_i (i <= degree), b_{degree+1} = (x_{degree+1}, ...,
  //! x_N) and every a-block filled with x_{degree+1}, each cube argument
  //! identifies x_{degree+1} with another variable, so the recursion ends at
  //! arity <= degree + 1. The result is verified exhaustively against f.
  inline Decomposition decompose_generators(FiniteAlgebra const&     alg,
                                            MalcevCertificate const& q,
                                            std::size_t              degree,
                                            OpTable const&           f) {
    if (degree == 0) {
      throw Error("supernilpotency degree must be at least 1");
    }
    std::size_t const m = alg.universe_size();
    if (f.universe_size() != m) {
      throw Error("target table is over a different universe");
    }
    OpTable const q_table = induced_table(alg, q.term, 3);
    OperationSymbol const q_sym{"q", 3};
    Term const q_term
        = Term::app(q_sym, {Term::var(1), Term::var(2), Term::var(3)});
    CubeTerm const cube
        = build_cube_term(MalcevCertificate{q_term, 1}, degree + 1);

    std::vector<Operation> leaves;
    std::unordered_map<OpTable, Term, OpTableHash> memo;
    std::size_t                                    cube_apps = 0;
    std::size_t                                    max_leaf  = 0;

    auto leaf = [&](OpTable const& t) -> Term {
      std::size_t const r = t.arity();
      for (std::size_t j = 1; j <= r; ++j) {
        if (t == OpTable::projection(m, r, j)) {
          return Term::var(j);
        }
      }
      for (auto const& op : leaves) {
        if (op.table == t) {
          std::vector<Term> kids;
          for (std::size_t j = 1; j <= r; ++j) {
            kids.push_back(Term::var(j));
          }
          return Term::app(op.symbol, std::move(kids));
        }
      }
      OperationSymbol sym{"g" + std::to_string(leaves.size()), r};
      leaves.push_back({sym, t});
      max_leaf = std::max(max_leaf, r);
      std::vector<Term> kids;
      for (std::size_t j = 1; j <= r; ++j) {
        kids.push_back(Term::var(j));
      }
      return Term::app(sym, std::move(kids));
    };

    auto go = [&](auto&& self, OpTable const& t) -> Term {
      if (auto it = memo.find(t); it != memo.end()) {
        return it->second;
      }
      std::size_t const N = t.arity();
      auto const        ess = detail::essential_positions(t);
      Term              result = Term::var(1);
      if (ess.size() < N) {
        // drop inessential arguments, solve the smaller table, rename back
        Term inner = self(self, detail::restrict_table(t, ess));
        result     = rename_variables(inner, ess);
      } else if (N <= degree + 1) {
        result = leaf(t);
      } else {
        std::size_t const    pivot = degree + 1;  // x_{degree+1}, 1-based
        std::size_t const    count = (std::size_t{1} << (degree + 1)) - 1;
        std::vector<Term>    args;
        std::vector<Element> full(N);
        for (std::size_t j = 0; j < count; ++j) {
          // variable map for argument j
          std::vector<std::size_t> map(N);
          for (std::size_t v = 1; v <= N; ++v) {
            std::size_t block = v <= degree ? v - 1 : degree;
            map[v - 1]        = ((j >> block) & 1U) != 0 ? v : pivot;
          }
          std::vector<Element> values(t.size());
          std::vector<Element> tuple(N, 0);
          for (auto& val : values) {
            for (std::size_t v = 0; v < N; ++v) {
              full[v] = tuple[map[v] - 1];
            }
            val = t.at(full);
            next_tuple(tuple, m);
          }
          args.push_back(self(self, OpTable(m, N, std::move(values))));
        }
        ++cube_apps;
        result = substitute(cube.term, args);
      }
      memo.emplace(t, result);
      return result;
    };

    Term term = go(go, f);

    std::vector<Operation> ops{{q_sym, q_table}};
    ops.insert(ops.end(), leaves.begin(), leaves.end());
    FiniteAlgebra generators(alg.name() + "-generators", m, std::move(ops));

    OpTable const got = induced_table(generators, term, f.arity());
    if (!(got == f)) {
      std::vector<Element> tuple(f.arity(), 0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (got[i] != f[i]) {
          throw SemanticMismatch("decomposition differs from the target",
                                 tuple, f[i], got[i]);
        }
        next_tuple(tuple, m);
      }
    }
    return Decomposition{generators, term, leaves.size(), max_leaf, cube_apps};
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_REWRITE_HPP_
