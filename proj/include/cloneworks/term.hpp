// cloneworks - term operations of finite algebras
//
// Terms over an algebra's signature: construction, S-expression syntax,
// length and height, substitution and evaluation.
//
// A Term is an immutable handle to a shared node, so terms built by
// composition are DAGs that share common subterms; every traversal below
// visits each distinct node once.

#ifndef CLONEWORKS_TERM_HPP_
#define CLONEWORKS_TERM_HPP_

#include <algorithm>      // for max
#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t
#include <limits>         // for numeric_limits
#include <memory>         // for shared_ptr, make_shared
#include <span>           // for span
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_map>  // for unordered_map
#include <utility>        // for move, pair
#include <vector>         // for vector

#include "algebra.hpp"
#include "error.hpp"

namespace cloneworks {

  class Term {
    struct Node {
      std::size_t       variable = 0;  // 0 for applications
      std::string       symbol;
      std::vector<Term> children;
      std::uint64_t     length     = 1;
      std::size_t       height     = 0;
      std::size_t       max_var    = 0;
    };

   public:
    //! The variable x_i, i >= 1.
    static Term var(std::size_t i) {
      if (i == 0) {
        throw TermError("variable indices start at 1");
      }
      auto n      = std::make_shared<Node>();
      n->variable = i;
      n->max_var  = i;
      return Term(std::move(n));
    }

    //! Application of a symbol; the child count must match its arity.
    static Term app(OperationSymbol const& f, std::vector<Term> children) {
      if (children.size() != f.arity) {
        throw TermError("'" + f.name + "' expects " + std::to_string(f.arity)
                        + " arguments, got " + std::to_string(children.size()));
      }
      auto n    = std::make_shared<Node>();
      n->symbol = f.name;
      // he(f) = 1 for nullary f, since max over no children is 0.
      std::size_t   h   = 0;
      std::uint64_t len = 1;
      for (auto const& c : children) {
        h          = std::max(h, c.height());
        len        = saturating_add(len, c.length());
        n->max_var = std::max(n->max_var, c.max_variable());
      }
      n->height   = 1 + h;
      n->length   = len;
      n->children = std::move(children);
      return Term(std::move(n));
    }

    [[nodiscard]] bool is_variable() const noexcept {
      return _node->variable != 0;
    }
    [[nodiscard]] std::size_t variable_index() const noexcept {
      return _node->variable;
    }
    [[nodiscard]] std::string const& symbol() const noexcept {
      return _node->symbol;
    }
    [[nodiscard]] std::size_t arity() const noexcept {
      return _node->children.size();
    }
    [[nodiscard]] std::vector<Term> const& children() const noexcept {
      return _node->children;
    }

    //! Total number of symbols; saturates at the uint64 maximum.
    [[nodiscard]] std::uint64_t length() const noexcept {
      return _node->length;
    }
    [[nodiscard]] std::size_t height() const noexcept {
      return _node->height;
    }
    //! Largest variable index occurring, 0 for ground terms.
    [[nodiscard]] std::size_t max_variable() const noexcept {
      return _node->max_var;
    }

    //! Identity of the shared node; stable for the lifetime of the term.
    [[nodiscard]] void const* id() const noexcept {
      return _node.get();
    }

    friend bool operator==(Term const& x, Term const& y) {
      if (x._node == y._node) {
        return true;
      }
      if (x._node->variable != y._node->variable
          || x._node->symbol != y._node->symbol
          || x._node->length != y._node->length
          || x._node->height != y._node->height
          || x._node->children.size() != y._node->children.size()) {
        return false;
      }
      for (std::size_t i = 0; i < x._node->children.size(); ++i) {
        if (!(x._node->children[i] == y._node->children[i])) {
          return false;
        }
      }
      return true;
    }

   private:
    explicit Term(std::shared_ptr<Node const> n) : _node(std::move(n)) {}

    static std::uint64_t saturating_add(std::uint64_t a,
                                        std::uint64_t b) noexcept {
      return a > std::numeric_limits<std::uint64_t>::max() - b
                 ? std::numeric_limits<std::uint64_t>::max()
                 : a + b;
    }

    std::shared_ptr<Node const> _node;
  };

  struct TermMetrics {
    std::uint64_t length;
    std::size_t   height;
  };

  inline TermMetrics term_metrics(Term const& t) noexcept {
    return {t.length(), t.height()};
  }

  ////////////////////////////////////////////////////////////////////////
  // Syntax
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    class TermParser {
     public:
      TermParser(std::string_view text, FiniteAlgebra const& alg)
          : _text(text), _alg(alg) {}

      Term parse() {
        Term t = parse_term();
        skip_space();
        if (_pos != _text.size()) {
          fail("trailing input");
        }
        return t;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) const {
        throw TermError(msg + " at offset " + std::to_string(_pos));
      }

      void skip_space() {
        while (_pos < _text.size()
               && (_text[_pos] == ' ' || _text[_pos] == '\t'
                   || _text[_pos] == '\n' || _text[_pos] == '\r')) {
          ++_pos;
        }
      }

      std::string_view token() {
        skip_space();
        std::size_t start = _pos;
        while (_pos < _text.size() && _text[_pos] != '(' && _text[_pos] != ')'
               && _text[_pos] != ' ' && _text[_pos] != '\t'
               && _text[_pos] != '\n' && _text[_pos] != '\r') {
          ++_pos;
        }
        if (start == _pos) {
          fail("expected a symbol");
        }
        return _text.substr(start, _pos - start);
      }

      OperationSymbol const& lookup(std::string_view name) {
        auto const* op = _alg.find(name);
        if (op == nullptr) {
          fail("unknown symbol '" + std::string(name) + "'");
        }
        return op->symbol;
      }

      Term atom(std::string_view tok) {
        if (!tok.empty() && tok[0] == 'x') {
          auto rest = tok.substr(1);
          bool digits
              = !rest.empty()
                && std::all_of(rest.begin(), rest.end(),
                               [](char c) { return c >= '0' && c <= '9'; });
          if (digits) {
            if (rest[0] == '0') {
              fail("malformed variable '" + std::string(tok) + "'");
            }
            std::size_t v = 0;
            for (char c : rest) {
              v = v * 10 + static_cast<std::size_t>(c - '0');
            }
            return Term::var(v);
          }
        }
        if (!is_identifier(tok)) {
          fail("malformed token '" + std::string(tok) + "'");
        }
        auto const& sym = lookup(tok);
        if (sym.arity != 0) {
          fail("'" + sym.name + "' expects " + std::to_string(sym.arity)
               + " arguments, got 0");
        }
        return Term::app(sym, {});
      }

      Term parse_term() {
        skip_space();
        if (_pos == _text.size()) {
          fail("unexpected end of term");
        }
        if (_text[_pos] == ')') {
          fail("unexpected ')'");
        }
        if (_text[_pos] != '(') {
          return atom(token());
        }
        ++_pos;
        auto name = token();
        if (!name.empty() && name[0] == 'x' && is_variable_form(name)) {
          fail("variable '" + std::string(name) + "' in operator position");
        }
        auto const&       sym = lookup(name);
        std::vector<Term> children;
        while (true) {
          skip_space();
          if (_pos == _text.size()) {
            fail("missing ')'");
          }
          if (_text[_pos] == ')') {
            ++_pos;
            break;
          }
          children.push_back(parse_term());
        }
        if (children.size() != sym.arity) {
          fail("'" + sym.name + "' expects " + std::to_string(sym.arity)
               + " arguments, got " + std::to_string(children.size()));
        }
        return Term::app(sym, std::move(children));
      }

      std::string_view     _text;
      FiniteAlgebra const& _alg;
      std::size_t          _pos = 0;
    };

    inline void print_into(Term const& t, std::string& out) {
      if (t.is_variable()) {
        out += 'x';
        out += std::to_string(t.variable_index());
        return;
      }
      if (t.arity() == 0) {
        out += t.symbol();
        return;
      }
      out += '(';
      out += t.symbol();
      for (auto const& c : t.children()) {
        out += ' ';
        print_into(c, out);
      }
      out += ')';
    }
  }  // namespace detail

  //! Parse a prefix S-expression such as "(plus (plus x1 x2) x3)".
  //! Bare identifiers denote nullary operations.
  inline Term parse_term(std::string_view text, FiniteAlgebra const& alg) {
    return detail::TermParser(text, alg).parse();
  }

  //! Single-line canonical form; nullary symbols are printed bare.
  inline std::string print_term(Term const& t) {
    std::string out;
    detail::print_into(t, out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitution
  ////////////////////////////////////////////////////////////////////////

  //! Replace every x_i in t by subs[i - 1]; shared subterms stay shared.
  inline Term substitute(Term const& t, std::span<Term const> subs) {
    if (t.max_variable() > subs.size()) {
      throw TermError("substitution covers " + std::to_string(subs.size())
                      + " variables but the term uses x"
                      + std::to_string(t.max_variable()));
    }
    std::unordered_map<void const*, Term> memo;
    auto go = [&](auto&& self, Term const& s) -> Term {
      if (s.is_variable()) {
        return subs[s.variable_index() - 1];
      }
      if (auto it = memo.find(s.id()); it != memo.end()) {
        return it->second;
      }
      std::vector<Term> kids;
      kids.reserve(s.arity());
      for (auto const& c : s.children()) {
        kids.push_back(self(self, c));
      }
      Term r = Term::app({s.symbol(), s.arity()}, std::move(kids));
      memo.emplace(s.id(), r);
      return r;
    };
    return go(go, t);
  }

  //! Rename variables: x_i becomes x_{map[i - 1]}.
  inline Term rename_variables(Term const& t, std::span<std::size_t const> map) {
    std::vector<Term> subs;
    subs.reserve(map.size());
    for (auto v : map) {
      subs.push_back(Term::var(v));
    }
    return substitute(t, subs);
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  //! A term flattened into a straight-line program over an algebra.
  //!
  //! Each distinct node becomes one slot, children before parents, so
  //! repeated evaluation costs one table lookup per distinct node.
  class CompiledTerm {
   public:
    CompiledTerm(FiniteAlgebra const& alg, Term const& t) : _alg(&alg) {
      std::unordered_map<void const*, std::size_t> slot;
      std::unordered_map<std::string, std::size_t> op_index;
      auto visit = [&](auto&& self, Term const& s) -> std::size_t {
        if (auto it = slot.find(s.id()); it != slot.end()) {
          return it->second;
        }
        Instr in;
        if (s.is_variable()) {
          in.variable = s.variable_index();
        } else {
          auto oi = op_index.find(s.symbol());
          if (oi == op_index.end()) {
            auto idx = alg.index_of(s.symbol());
            if (!idx) {
              throw TermError("unknown symbol '" + s.symbol() + "' in algebra "
                              + alg.name());
            }
            if (alg.operations()[*idx].symbol.arity != s.arity()) {
              throw TermError("arity mismatch for '" + s.symbol() + "'");
            }
            oi = op_index.emplace(s.symbol(), *idx).first;
          }
          in.op = oi->second;
          for (auto const& c : s.children()) {
            in.args.push_back(self(self, c));
          }
        }
        _program.push_back(std::move(in));
        std::size_t id = _program.size() - 1;
        slot.emplace(s.id(), id);
        return id;
      };
      visit(visit, t);
      _max_var = t.max_variable();
      _scratch.resize(_program.size());
    }

    [[nodiscard]] std::size_t max_variable() const noexcept {
      return _max_var;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _program.size();
    }

    //! Value at an assignment indexed from x_1; not thread safe (scratch).
    Element operator()(std::span<Element const> assignment) {
      if (assignment.size() < _max_var) {
        throw TermError("assignment covers " + std::to_string(assignment.size())
                        + " variables but the term uses x"
                        + std::to_string(_max_var));
      }
      auto const& ops = _alg->operations();
      for (std::size_t i = 0; i < _program.size(); ++i) {
        auto const& in = _program[i];
        if (in.variable != 0) {
          _scratch[i] = assignment[in.variable - 1];
          continue;
        }
        auto const& table = ops[in.op].table;
        std::size_t idx   = 0;
        for (auto a : in.args) {
          idx = idx * _alg->universe_size() + _scratch[a];
        }
        _scratch[i] = table[idx];
      }
      return _scratch.back();
    }

   private:
    struct Instr {
      std::size_t              variable = 0;
      std::size_t              op       = 0;
      std::vector<std::size_t> args;
    };
    FiniteAlgebra const* _alg;
    std::vector<Instr>   _program;
    std::vector<Element> _scratch;
    std::size_t          _max_var = 0;
  };

  //! Bottom-up evaluation of t at an assignment (a_1, ..., a_n).
  inline Element evaluate(FiniteAlgebra const&     alg,
                          Term const&              t,
                          std::span<Element const> assignment) {
    for (Element a : assignment) {
      if (a >= alg.universe_size()) {
        throw TermError("assignment value out of range");
      }
    }
    CompiledTerm prog(alg, t);
    return prog(assignment);
  }

  //! The n-ary operation induced by t; n may exceed the variables used.
  inline OpTable induced_table(FiniteAlgebra const& alg,
                               Term const&          t,
                               std::size_t          n) {
    if (t.max_variable() > n) {
      throw TermError("term uses x" + std::to_string(t.max_variable())
                      + " but the declared arity is " + std::to_string(n));
    }
    std::size_t const    m    = alg.universe_size();
    std::size_t const    size = detail::checked_pow(m, n);
    CompiledTerm         prog(alg, t);
    std::vector<Element> values(size);
    std::vector<Element> tuple(n, 0);
    for (std::size_t i = 0; i < size; ++i) {
      values[i] = prog(tuple);
      next_tuple(tuple, m);
    }
    return OpTable(m, n, std::move(values));
  }

  //! Table of f(t_1, ..., t_k) from the tables of f and of the t_i, all
  //! t_i of a common arity.
  inline OpTable compose_tables(OpTable const&                f,
                                std::span<OpTable const* const> args,
                                std::size_t m,
                                std::size_t arity) {
    std::size_t const    size = detail::checked_pow(m, arity);
    std::vector<Element> values(size);
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t idx = 0;
      for (auto const* a : args) {
        idx = idx * m + (*a)[i];
      }
      values[i] = f[idx];
    }
    return OpTable(m, arity, std::move(values));
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_TERM_HPP_
