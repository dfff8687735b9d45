// cloneworks - term operations of finite algebras
//
// Finite algebras given by operation tables, and the line-oriented text
// format they are read from and written to.

#ifndef CLONEWORKS_ALGEBRA_HPP_
#define CLONEWORKS_ALGEBRA_HPP_

#include <algorithm>    // for all_of, max
#include <charconv>     // for from_chars
#include <compare>      // for strong_ordering
#include <cstddef>      // for size_t
#include <cstdint>      // for uint8_t, uint64_t
#include <functional>   // for hash
#include <limits>       // for numeric_limits
#include <map>          // for map
#include <optional>     // for optional
#include <span>         // for span
#include <sstream>      // for ostringstream
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move
#include <vector>       // for vector

#include "error.hpp"

namespace cloneworks {

  //! An element of the universe {0, ..., m - 1}.
  using Element = std::uint8_t;

  //! Largest supported universe size.
  inline constexpr std::size_t max_universe_size = 256;

  namespace detail {
    //! m^n, throwing if the result does not fit in a size_t.
    inline std::size_t checked_pow(std::size_t m, std::size_t n) {
      std::size_t result = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (m != 0 && result > std::numeric_limits<std::size_t>::max() / m) {
          throw Error("table size " + std::to_string(m) + "^"
                      + std::to_string(n) + " overflows");
        }
        result *= m;
      }
      return result;
    }

    inline bool is_identifier(std::string_view s) {
      if (s.empty()) {
        return false;
      }
      auto alpha = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
      };
      auto digit = [](char c) { return c >= '0' && c <= '9'; };
      if (!alpha(s[0])) {
        return false;
      }
      return std::all_of(s.begin() + 1, s.end(), [&](char c) {
        return alpha(c) || digit(c) || c == '_';
      });
    }

    //! True for the tokens x<digits> that are reserved for variables.
    inline bool is_variable_form(std::string_view s) {
      return s.size() >= 2 && s[0] == 'x'
             && std::all_of(s.begin() + 1, s.end(), [](char c) {
                  return c >= '0' && c <= '9';
                });
    }
  }  // namespace detail

  //! Advance `tuple` to its lexicographic successor in {0..m-1}^n, last
  //! coordinate fastest. Returns false after the last tuple.
  inline bool next_tuple(std::span<Element> tuple, std::size_t m) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
      if (static_cast<std::size_t>(tuple[i]) + 1 < m) {
        ++tuple[i];
        return true;
      }
      tuple[i] = 0;
    }
    return false;
  }

  //! Operation symbol of a signature.
  struct OperationSymbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(OperationSymbol const&,
                           OperationSymbol const&) = default;
  };

  //! The dense table of a function A^n -> A.
  //!
  //! Values are stored row-major with the first argument most significant:
  //! the tuple (a_1, ..., a_n) lives at index sum a_i * m^(n - i).
  class OpTable {
   public:
    OpTable() = default;

    OpTable(std::size_t m, std::size_t arity, std::vector<Element> values)
        : _m(m), _arity(arity), _values(std::move(values)) {
      if (m == 0 || m > max_universe_size) {
        throw Error("universe size must be in [1, 256], got "
                    + std::to_string(m));
      }
      if (_values.size() != detail::checked_pow(m, arity)) {
        throw Error("table of arity " + std::to_string(arity) + " over "
                    + std::to_string(m) + " elements needs "
                    + std::to_string(detail::checked_pow(m, arity))
                    + " values, got " + std::to_string(_values.size()));
      }
      for (Element v : _values) {
        if (v >= m) {
          throw Error("table entry " + std::to_string(v)
                      + " out of range for size " + std::to_string(m));
        }
      }
    }

    //! The n-ary projection onto argument j (1-based).
    static OpTable projection(std::size_t m, std::size_t arity, std::size_t j) {
      if (j == 0 || j > arity) {
        throw Error("projection index " + std::to_string(j)
                    + " out of range for arity " + std::to_string(arity));
      }
      std::size_t const   size   = detail::checked_pow(m, arity);
      std::size_t const   stride = detail::checked_pow(m, arity - j);
      std::vector<Element> values(size);
      for (std::size_t i = 0; i < size; ++i) {
        values[i] = static_cast<Element>((i / stride) % m);
      }
      return OpTable(m, arity, std::move(values));
    }

    static OpTable constant(std::size_t m, std::size_t arity, Element v) {
      return OpTable(
          m, arity, std::vector<Element>(detail::checked_pow(m, arity), v));
    }

    [[nodiscard]] std::size_t universe_size() const noexcept {
      return _m;
    }
    [[nodiscard]] std::size_t arity() const noexcept {
      return _arity;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _values.size();
    }
    [[nodiscard]] std::span<Element const> values() const noexcept {
      return _values;
    }
    [[nodiscard]] Element operator[](std::size_t index) const noexcept {
      return _values[index];
    }

    [[nodiscard]] std::size_t index_of(std::span<Element const> args) const {
      if (args.size() != _arity) {
        throw Error("expected " + std::to_string(_arity) + " arguments, got "
                    + std::to_string(args.size()));
      }
      std::size_t index = 0;
      for (Element a : args) {
        index = index * _m + a;
      }
      return index;
    }

    [[nodiscard]] Element at(std::span<Element const> args) const {
      return _values[index_of(args)];
    }

    //! The table viewed as raw bytes; the canonical sort and hash key.
    [[nodiscard]] std::string_view bytes() const noexcept {
      return {reinterpret_cast<char const*>(_values.data()), _values.size()};
    }

    [[nodiscard]] bool is_constant() const noexcept {
      return std::all_of(_values.begin(), _values.end(), [this](Element v) {
        return v == _values.front();
      });
    }

    [[nodiscard]] std::string to_string() const {
      std::string out;
      for (std::size_t i = 0; i < _values.size(); ++i) {
        if (i != 0) {
          out += ' ';
        }
        out += std::to_string(_values[i]);
      }
      return out;
    }

    friend bool operator==(OpTable const& x, OpTable const& y) noexcept {
      return x._m == y._m && x._arity == y._arity && x._values == y._values;
    }

    friend std::strong_ordering operator<=>(OpTable const& x,
                                            OpTable const& y) noexcept {
      if (auto c = x._m <=> y._m; c != 0) {
        return c;
      }
      if (auto c = x._arity <=> y._arity; c != 0) {
        return c;
      }
      return x.bytes().compare(y.bytes()) <=> 0;
    }

   private:
    std::size_t          _m     = 1;
    std::size_t          _arity = 0;
    std::vector<Element> _values{0};
  };

  struct OpTableHash {
    std::size_t operator()(OpTable const& t) const noexcept {
      return std::hash<std::string_view>{}(t.bytes()) ^ (t.arity() * 0x9e37);
    }
  };

  //! Parse a whitespace separated list of elements into a table of the given
  //! arity over m elements.
  inline OpTable parse_table(std::string_view text,
                             std::size_t      m,
                             std::size_t      arity) {
    std::vector<Element> values;
    std::size_t          pos = 0;
    while (pos < text.size()) {
      while (pos < text.size()
             && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'
                 || text[pos] == ',')) {
        ++pos;
      }
      if (pos == text.size()) {
        break;
      }
      unsigned    v   = 0;
      auto const* beg = text.data() + pos;
      auto const* end = text.data() + text.size();
      auto [ptr, ec]  = std::from_chars(beg, end, v);
      if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t'
                                && *ptr != '\n' && *ptr != ',')) {
        throw Error("malformed table entry near position "
                    + std::to_string(pos));
      }
      if (v >= m) {
        throw Error("table entry " + std::to_string(v)
                    + " out of range for size " + std::to_string(m));
      }
      values.push_back(static_cast<Element>(v));
      pos = static_cast<std::size_t>(ptr - text.data());
    }
    return OpTable(m, arity, std::move(values));
  }

  struct Operation {
    OperationSymbol symbol;
    OpTable         table;
  };

  //! Designation roles for a primal basis and a Mal'cev operation.
  //!
  //! Valid roles are plus, times, zero, one, malcev and chi<a> for an
  //! element a of the universe.
  inline bool is_designation_role(std::string_view role, std::size_t m) {
    if (role == "plus" || role == "times" || role == "zero" || role == "one"
        || role == "malcev") {
      return true;
    }
    if (role.size() > 3 && role.substr(0, 3) == "chi") {
      unsigned v           = 0;
      auto     rest        = role.substr(3);
      auto [ptr, ec]       = std::from_chars(rest.data(),
                                       rest.data() + rest.size(), v);
      bool const canonical = rest.size() == 1 || rest[0] != '0';
      return ec == std::errc() && ptr == rest.data() + rest.size() && v < m
             && canonical;
    }
    return false;
  }

  //! A finite algebra: a universe {0..m-1} and an ordered list of operations.
  class FiniteAlgebra {
   public:
    FiniteAlgebra(std::string                        name,
                  std::size_t                        m,
                  std::vector<Operation>             ops,
                  std::map<std::string, std::string> designations = {})
        : _name(std::move(name)),
          _m(m),
          _ops(std::move(ops)),
          _designations(std::move(designations)) {
      if (m == 0 || m > max_universe_size) {
        throw Error("universe size must be in [1, 256], got "
                    + std::to_string(m));
      }
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        auto const& op = _ops[i];
        if (!detail::is_identifier(op.symbol.name)
            || detail::is_variable_form(op.symbol.name)) {
          throw Error("invalid operation name '" + op.symbol.name + "'");
        }
        if (op.table.universe_size() != m) {
          throw Error("operation '" + op.symbol.name
                      + "' has a table over the wrong universe");
        }
        if (op.table.arity() != op.symbol.arity) {
          throw Error("operation '" + op.symbol.name
                      + "' has a table of the wrong arity");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (_ops[j].symbol.name == op.symbol.name) {
            throw Error("duplicate operation '" + op.symbol.name + "'");
          }
        }
      }
      for (auto const& [role, target] : _designations) {
        if (!is_designation_role(role, m)) {
          throw Error("unknown designation role '" + role + "'");
        }
        if (find(target) == nullptr) {
          throw Error("designation '" + role + "' names unknown operation '"
                      + target + "'");
        }
      }
    }

    [[nodiscard]] std::string const& name() const noexcept {
      return _name;
    }
    [[nodiscard]] std::size_t universe_size() const noexcept {
      return _m;
    }
    [[nodiscard]] std::vector<Operation> const& operations() const noexcept {
      return _ops;
    }
    [[nodiscard]] std::map<std::string, std::string> const&
    designations() const noexcept {
      return _designations;
    }

    //! Number of operation symbols (r in the general bounds).
    [[nodiscard]] std::size_t symbol_count() const noexcept {
      return _ops.size();
    }

    [[nodiscard]] std::size_t max_arity() const noexcept {
      std::size_t result = 0;
      for (auto const& op : _ops) {
        result = std::max(result, op.symbol.arity);
      }
      return result;
    }

    [[nodiscard]] Operation const* find(std::string_view name) const noexcept {
      for (auto const& op : _ops) {
        if (op.symbol.name == name) {
          return &op;
        }
      }
      return nullptr;
    }

    [[nodiscard]] std::optional<std::size_t>
    index_of(std::string_view name) const noexcept {
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (_ops[i].symbol.name == name) {
          return i;
        }
      }
      return std::nullopt;
    }

    [[nodiscard]] std::optional<std::string>
    designation(std::string const& role) const {
      auto it = _designations.find(role);
      if (it == _designations.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    //! A copy of this algebra with one more operation appended.
    [[nodiscard]] FiniteAlgebra with_operation(Operation op) const {
      auto ops = _ops;
      ops.push_back(std::move(op));
      return FiniteAlgebra(_name, _m, std::move(ops), _designations);
    }

    //! The expansion by one nullary constant per element, named c<a>
    //! (prefixed with underscores until the names are fresh).
    [[nodiscard]] FiniteAlgebra with_constants() const {
      std::string prefix = "c";
      auto        clash  = [&] {
        for (std::size_t a = 0; a < _m; ++a) {
          if (find(prefix + std::to_string(a)) != nullptr) {
            return true;
          }
        }
        return false;
      };
      while (clash()) {
        prefix = "k" + prefix;
      }
      auto ops = _ops;
      for (std::size_t a = 0; a < _m; ++a) {
        ops.push_back({{prefix + std::to_string(a), 0},
                       OpTable::constant(_m, 0, static_cast<Element>(a))});
      }
      return FiniteAlgebra(_name + "*", _m, std::move(ops), _designations);
    }

   private:
    std::string                        _name;
    std::size_t                        _m;
    std::vector<Operation>             _ops;
    std::map<std::string, std::string> _designations;
  };

  namespace detail {
    struct LineTokens {
      std::size_t              line;
      std::vector<std::string> tokens;
    };

    inline std::vector<LineTokens> tokenize_lines(std::string_view text) {
      std::vector<LineTokens> out;
      std::size_t             line = 0;
      std::size_t             pos  = 0;
      while (pos <= text.size()) {
        ++line;
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
          eol = text.size();
        }
        auto body = text.substr(pos, eol - pos);
        if (auto hash = body.find('#'); hash != std::string_view::npos) {
          body = body.substr(0, hash);
        }
        LineTokens lt{line, {}};
        std::size_t i = 0;
        while (i < body.size()) {
          while (i < body.size()
                 && (body[i] == ' ' || body[i] == '\t' || body[i] == '\r')) {
            ++i;
          }
          std::size_t j = i;
          while (j < body.size() && body[j] != ' ' && body[j] != '\t'
                 && body[j] != '\r') {
            ++j;
          }
          if (j > i) {
            lt.tokens.emplace_back(body.substr(i, j - i));
          }
          i = j;
        }
        if (!lt.tokens.empty()) {
          out.push_back(std::move(lt));
        }
        pos = eol + 1;
      }
      return out;
    }

    inline std::size_t parse_count(std::string const& tok,
                                   std::size_t        line,
                                   char const*        what) {
      std::size_t v = 0;
      auto [ptr, ec]
          = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, std::string("expected ") + what + ", got '"
                                   + tok + "'");
      }
      return v;
    }
  }  // namespace detail

  //! Read an algebra from its text format.
  //!
  //! \code
  //! algebra z2
  //! size 2
  //! op plus 2
  //! 0 1 1 0
  //! designate plus plus
  //! \endcode
  inline FiniteAlgebra parse_algebra(std::string_view text) {
    using detail::parse_count;
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) {
      throw ParseError(1, "empty algebra description");
    }
    auto const& head = lines[0];
    if (head.tokens.size() != 2 || head.tokens[0] != "algebra") {
      throw ParseError(head.line, "expected 'algebra <name>'");
    }
    if (lines.size() < 2 || lines[1].tokens.size() != 2
        || lines[1].tokens[0] != "size") {
      throw ParseError(lines.size() < 2 ? head.line + 1 : lines[1].line,
                       "expected 'size <m>'");
    }
    std::size_t const m = parse_count(lines[1].tokens[1], lines[1].line, "size");
    if (m == 0 || m > max_universe_size) {
      throw ParseError(lines[1].line, "size must be in [1, 256]");
    }

    std::vector<Operation>             ops;
    std::map<std::string, std::string> designations;
    std::vector<std::size_t>           designation_lines;
    std::map<std::string, std::size_t> role_line;

    std::size_t li = 2;
    while (li < lines.size()) {
      auto const& lt = lines[li];
      auto const& kw = lt.tokens[0];
      if (kw == "op") {
        if (lt.tokens.size() != 3) {
          throw ParseError(lt.line, "expected 'op <name> <arity>'");
        }
        auto const& name = lt.tokens[1];
        if (!detail::is_identifier(name) || detail::is_variable_form(name)) {
          throw ParseError(lt.line, "invalid operation name '" + name + "'");
        }
        for (auto const& op : ops) {
          if (op.symbol.name == name) {
            throw ParseError(lt.line, "duplicate operation '" + name + "'");
          }
        }
        std::size_t const arity  = parse_count(lt.tokens[2], lt.line, "arity");
        std::size_t       needed = 0;
        try {
          needed = detail::checked_pow(m, arity);
        } catch (Error const& e) {
          throw ParseError(lt.line, e.what());
        }
        std::vector<Element> values;
        values.reserve(needed);
        ++li;
        std::size_t last_line = lt.line;
        while (values.size() < needed) {
          if (li == lines.size()) {
            throw ParseError(last_line,
                             "operation '" + name + "' needs "
                                 + std::to_string(needed) + " values, got "
                                 + std::to_string(values.size()));
          }
          auto const& vl = lines[li];
          if (vl.tokens[0] == "op" || vl.tokens[0] == "designate") {
            throw ParseError(vl.line,
                             "operation '" + name + "' needs "
                                 + std::to_string(needed) + " values, got "
                                 + std::to_string(values.size()));
          }
          for (auto const& tok : vl.tokens) {
            std::size_t v = parse_count(tok, vl.line, "table entry");
            if (v >= m) {
              throw ParseError(vl.line, "table entry " + tok
                                            + " out of range for size "
                                            + std::to_string(m));
            }
            if (values.size() == needed) {
              throw ParseError(vl.line, "operation '" + name + "' has more than "
                                            + std::to_string(needed)
                                            + " values");
            }
            values.push_back(static_cast<Element>(v));
          }
          last_line = vl.line;
          ++li;
        }
        ops.push_back({{name, arity}, OpTable(m, arity, std::move(values))});
      } else if (kw == "designate") {
        if (lt.tokens.size() != 3) {
          throw ParseError(lt.line, "expected 'designate <role> <opname>'");
        }
        if (!is_designation_role(lt.tokens[1], m)) {
          throw ParseError(lt.line,
                           "unknown designation role '" + lt.tokens[1] + "'");
        }
        if (designations.count(lt.tokens[1]) != 0) {
          throw ParseError(lt.line, "role '" + lt.tokens[1]
                                        + "' designated twice");
        }
        designations[lt.tokens[1]] = lt.tokens[2];
        role_line[lt.tokens[1]]    = lt.line;
        ++li;
      } else {
        throw ParseError(lt.line, "unexpected '" + kw + "'");
      }
    }
    for (auto const& [role, target] : designations) {
      bool found = false;
      for (auto const& op : ops) {
        found = found || op.symbol.name == target;
      }
      if (!found) {
        throw ParseError(role_line[role], "designation '" + role
                                              + "' names unknown operation '"
                                              + target + "'");
      }
    }
    return FiniteAlgebra(head.tokens[1], m, std::move(ops),
                         std::move(designations));
  }

  //! Write an algebra in the format parse_algebra reads; one table row of m
  //! values per line.
  inline std::string print_algebra(FiniteAlgebra const& alg) {
    std::ostringstream out;
    out << "algebra " << alg.name() << "\n";
    out << "size " << alg.universe_size() << "\n";
    std::size_t const m = alg.universe_size();
    for (auto const& op : alg.operations()) {
      out << "op " << op.symbol.name << " " << op.symbol.arity << "\n";
      auto        values = op.table.values();
      std::size_t row    = op.symbol.arity == 0 ? 1 : m;
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << static_cast<unsigned>(values[i]);
        out << ((i + 1) % row == 0 ? "\n" : " ");
      }
    }
    for (auto const& [role, target] : alg.designations()) {
      out << "designate " << role << " " << target << "\n";
    }
    return out.str();
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_ALGEBRA_HPP_
