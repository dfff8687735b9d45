// cloneworks - term operations of finite algebras
//
// Enumeration of the n-ary term operations of a finite algebra.
//
// close_by_height builds the clone layer by layer: layer 0 holds the
// projections and layer k + 1 adds every table f(t_1, ..., t_r) with all t_i
// in layers <= k. The layer in which a table first appears is the least
// height of a term inducing it. assign_min_lengths then runs a dynamic
// program over increasing term length to attach a shortest term to each
// table of a complete clone.

#ifndef CLONEWORKS_CLONE_HPP_
#define CLONEWORKS_CLONE_HPP_

#include <algorithm>      // for sort, max
#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t
#include <optional>       // for optional
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <utility>        // for move
#include <vector>         // for vector

#include "algebra.hpp"
#include "error.hpp"
#include "term.hpp"

namespace cloneworks {

  //! Default cap on the number of distinct tables a closure may store.
  inline constexpr std::size_t default_budget = 200'000;

  struct CloneEntry {
    OpTable       table;
    std::size_t   layer = 0;  // == min_height
    Term          min_height_term;
    std::uint64_t min_length = 0;  // 0 until assign_min_lengths ran
    std::optional<Term> min_length_term;

    [[nodiscard]] std::size_t min_height() const noexcept {
      return layer;
    }
  };

  //! The n-ary term operations found by a closure, in discovery order.
  class CloneTable {
   public:
    CloneTable(std::string algebra_name, std::size_t arity)
        : _algebra(std::move(algebra_name)), _arity(arity) {}

    [[nodiscard]] std::string const& algebra_name() const noexcept {
      return _algebra;
    }
    [[nodiscard]] std::size_t arity() const noexcept {
      return _arity;
    }
    //! True iff a sweep added nothing, i.e. the entries form the whole clone.
    [[nodiscard]] bool complete() const noexcept {
      return _complete;
    }
    [[nodiscard]] bool lengths_assigned() const noexcept {
      return _lengths;
    }
    //! Number of closure sweeps performed.
    [[nodiscard]] std::size_t sweeps() const noexcept {
      return _sweeps;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _entries.size();
    }
    [[nodiscard]] std::vector<CloneEntry> const& entries() const noexcept {
      return _entries;
    }

    [[nodiscard]] CloneEntry const* find(OpTable const& t) const {
      auto it = _index.find(t);
      return it == _index.end() ? nullptr : &_entries[it->second];
    }

    [[nodiscard]] bool contains(OpTable const& t) const {
      return _index.count(t) != 0;
    }

    //! Largest layer, i.e. Ht(n) when complete.
    [[nodiscard]] std::size_t max_height() const noexcept {
      std::size_t h = 0;
      for (auto const& e : _entries) {
        h = std::max(h, e.layer);
      }
      return h;
    }

    //! Largest minimal length, i.e. Len(n) once lengths are assigned.
    [[nodiscard]] std::uint64_t max_length() const noexcept {
      std::uint64_t l = 0;
      for (auto const& e : _entries) {
        l = std::max(l, e.min_length);
      }
      return l;
    }

    //! Entry indices sorted by the byte encoding of their tables.
    [[nodiscard]] std::vector<std::size_t> canonical_order() const {
      std::vector<std::size_t> order(_entries.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
      }
      std::sort(order.begin(), order.end(), [this](auto a, auto b) {
        return _entries[a].table.bytes() < _entries[b].table.bytes();
      });
      return order;
    }

   private:
    friend CloneTable close_by_height(FiniteAlgebra const&, std::size_t,
                                      std::size_t);
    friend CloneTable assign_min_lengths(FiniteAlgebra const&, CloneTable);

    bool insert(CloneEntry e) {
      auto [it, fresh] = _index.emplace(e.table, _entries.size());
      if (fresh) {
        _entries.push_back(std::move(e));
      }
      return fresh;
    }

    std::string                                       _algebra;
    std::size_t                                       _arity;
    std::vector<CloneEntry>                           _entries;
    std::unordered_map<OpTable, std::size_t, OpTableHash> _index;
    bool        _complete = false;
    bool        _lengths  = false;
    std::size_t _sweeps   = 0;
  };

  namespace detail {
    //! Mixed-radix successor of `choice`, last coordinate fastest. Returns
    //! false after the last tuple (immediately for the empty tuple).
    inline bool next_choice(std::vector<std::size_t>&     choice,
                            std::vector<std::size_t> const& sizes) {
      for (std::size_t i = choice.size(); i-- > 0;) {
        if (++choice[i] < sizes[i]) {
          return true;
        }
        choice[i] = 0;
      }
      return false;
    }

    //! Compositions of `total` into `parts` positive summands, in
    //! lexicographic order.
    inline void compositions(std::uint64_t                            total,
                             std::size_t                              parts,
                             std::vector<std::uint64_t>&              prefix,
                             std::vector<std::vector<std::uint64_t>>& out) {
      if (parts == 0) {
        if (total == 0) {
          out.push_back(prefix);
        }
        return;
      }
      if (total < parts) {
        return;
      }
      for (std::uint64_t first = 1; first + (parts - 1) <= total; ++first) {
        prefix.push_back(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop_back();
      }
    }
  }  // namespace detail

  //! All n-ary term operations reachable before `budget` tables are stored.
  //!
  //! Candidates are generated per sweep with operations in file order and
  //! child tuples in lexicographic order of the children's table bytes; the
  //! first term producing a new table becomes its representative. A sweep
  //! that would store more than `budget` tables stops the closure and leaves
  //! the table incomplete.
  inline CloneTable close_by_height(FiniteAlgebra const& alg,
                                    std::size_t          n,
                                    std::size_t          budget) {
    if (n == 0) {
      throw Error("closure arity must be at least 1");
    }
    if (budget < n) {
      throw Error("budget must be at least the arity");
    }
    std::size_t const m = alg.universe_size();
    CloneTable        clone(alg.name(), n);
    for (std::size_t j = 1; j <= n; ++j) {
      clone.insert({OpTable::projection(m, n, j), 0, Term::var(j), 0, {}});
    }

    // pool: all entries of H_k in canonical byte order
    std::vector<std::size_t> pool;
    auto rebuild_pool = [&] {
      pool = clone.canonical_order();
    };
    rebuild_pool();

    for (std::size_t k = 0;; ++k) {
      std::size_t const before = clone.size();
      bool              over   = false;
      std::vector<CloneEntry> fresh;
      std::unordered_map<OpTable, std::size_t, OpTableHash> fresh_index;
      std::vector<OpTable const*> args;

      for (auto const& op : alg.operations()) {
        std::size_t const r = op.symbol.arity;
        if (r == 0 && k != 0) {
          continue;
        }
        args.resize(r);
        std::vector<std::size_t> choice(r, 0);
        std::vector<std::size_t> sizes(r, pool.size());
        if (r > 0 && pool.empty()) {
          continue;
        }
        do {
          // Only tuples with a child of the newest layer can be new.
          bool newest = (r == 0);
          for (std::size_t i = 0; i < r; ++i) {
            auto const& e = clone._entries[pool[choice[i]]];
            newest        = newest || e.layer == k;
            args[i]       = &e.table;
          }
          if (!newest) {
            continue;
          }
          OpTable t = compose_tables(op.table, args, m, n);
          if (clone.contains(t) || fresh_index.count(t) != 0) {
            continue;
          }
          if (before + fresh.size() >= budget) {
            over = true;
            break;
          }
          std::vector<Term> kids;
          kids.reserve(r);
          for (std::size_t i = 0; i < r; ++i) {
            kids.push_back(clone._entries[pool[choice[i]]].min_height_term);
          }
          fresh_index.emplace(t, fresh.size());
          fresh.push_back(
              {std::move(t), k + 1, Term::app(op.symbol, std::move(kids)), 0,
               {}});
        } while (detail::next_choice(choice, sizes));
        if (over) {
          break;
        }
      }
      for (auto& e : fresh) {
        clone.insert(std::move(e));
      }
      clone._sweeps = k + 1;
      if (over) {
        clone._complete = false;
        return clone;
      }
      if (clone.size() == before) {
        clone._complete = true;
        return clone;
      }
      rebuild_pool();
    }
  }

  //! Attach a shortest representative term to every entry of a complete
  //! clone.
  //!
  //! Terms of length 1 are the variables and the nullary symbols; a term of
  //! length l is f(s_1, ..., s_r) with the lengths of the s_i summing to
  //! l - 1, and only shortest representatives need be used as children.
  //! Lengths are visited in increasing order, so the first length at which
  //! a table appears is its minimal length.
  inline CloneTable assign_min_lengths(FiniteAlgebra const& alg,
                                       CloneTable           clone) {
    if (!clone.complete()) {
      throw Error("minimal lengths need a complete clone");
    }
    std::size_t const n = clone.arity();
    std::size_t const m = alg.universe_size();
    std::size_t       assigned = 0;
    // by_length[l]: entries whose minimal length is l, in byte order
    std::vector<std::vector<std::size_t>> by_length(2);

    auto assign = [&](OpTable const& t, std::uint64_t len, Term const& term,
                      std::vector<std::size_t>& level) {
      auto it = clone._index.find(t);
      if (it == clone._index.end()) {
        throw Error("internal: term operation outside a complete clone");
      }
      auto& e = clone._entries[it->second];
      if (e.min_length != 0) {
        return;
      }
      e.min_length      = len;
      e.min_length_term = term;
      level.push_back(it->second);
      ++assigned;
    };

    auto by_bytes = [&](std::vector<std::size_t>& level) {
      std::sort(level.begin(), level.end(), [&](auto a, auto b) {
        return clone._entries[a].table.bytes()
               < clone._entries[b].table.bytes();
      });
    };

    for (std::size_t j = 1; j <= n; ++j) {
      assign(OpTable::projection(m, n, j), 1, Term::var(j), by_length[1]);
    }
    for (auto const& op : alg.operations()) {
      if (op.symbol.arity == 0) {
        assign(OpTable::constant(m, n, op.table[0]), 1,
               Term::app(op.symbol, {}), by_length[1]);
      }
    }
    by_bytes(by_length[1]);

    // Lemma-style cap: a complete clone never needs lengths above the
    // geometric bound in its maximal height.
    std::uint64_t cap = 1;
    {
      std::uint64_t const mbar = alg.max_arity();
      std::uint64_t       pw   = 1;
      for (std::size_t i = 1; i <= clone.max_height() && cap < (1ULL << 40);
           ++i) {
        pw *= std::max<std::uint64_t>(mbar, 1);
        cap += pw;
      }
    }

    std::vector<OpTable const*> args;
    for (std::uint64_t len = 2; assigned < clone.size(); ++len) {
      if (len > cap + 1) {
        throw Error("internal: length search exceeded its bound");
      }
      std::vector<std::size_t> level;
      for (auto const& op : alg.operations()) {
        std::size_t const r = op.symbol.arity;
        if (r == 0 || len - 1 < r) {
          continue;
        }
        args.resize(r);
        std::vector<std::vector<std::uint64_t>> comps;
        std::vector<std::uint64_t>              prefix;
        detail::compositions(len - 1, r, prefix, comps);
        for (auto const& parts : comps) {
          std::vector<std::size_t> sizes(r);
          bool                     usable = true;
          for (std::size_t i = 0; i < r; ++i) {
            usable   = usable && !by_length[parts[i]].empty();
            sizes[i] = by_length[parts[i]].size();
          }
          if (!usable) {
            continue;
          }
          std::vector<std::size_t> choice(r, 0);
          do {
            for (std::size_t i = 0; i < r; ++i) {
              args[i] = &clone._entries[by_length[parts[i]][choice[i]]].table;
            }
            OpTable t  = compose_tables(op.table, args, m, n);
            auto    it = clone._index.find(t);
            if (it == clone._index.end()
                || clone._entries[it->second].min_length != 0) {
              continue;
            }
            std::vector<Term> kids;
            kids.reserve(r);
            for (std::size_t i = 0; i < r; ++i) {
              kids.push_back(
                  *clone._entries[by_length[parts[i]][choice[i]]]
                       .min_length_term);
            }
            assign(t, len, Term::app(op.symbol, std::move(kids)), level);
          } while (detail::next_choice(choice, sizes));
        }
      }
      by_bytes(level);
      by_length.push_back(std::move(level));
    }
    clone._lengths = true;
    return clone;
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_CLONE_HPP_
