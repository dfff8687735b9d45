// cloneworks - term operations of finite algebras
//
// Exception types shared by every module.

#ifndef CLONEWORKS_ERROR_HPP_
#define CLONEWORKS_ERROR_HPP_

#include <cstddef>    // for size_t
#include <cstdint>    // for uint8_t
#include <stdexcept>  // for runtime_error
#include <string>     // for string, to_string
#include <utility>    // for move
#include <vector>     // for vector

namespace cloneworks {

  //! Base class of every error thrown by cloneworks.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Malformed input text (algebra files, terms); carries a 1-based line.
  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::string const& msg)
        : Error("line " + std::to_string(line) + ": " + msg), _line(line) {}

    [[nodiscard]] std::size_t line() const noexcept {
      return _line;
    }

   private:
    std::size_t _line;
  };

  //! A term that is ill-formed with respect to an algebra or an arity.
  class TermError : public Error {
   public:
    using Error::Error;
  };

  //! An algebra or designation that violates a required identity.
  class InvalidBasis : public Error {
   public:
    using Error::Error;
  };

  //! Two terms that should induce the same operation differ at an assignment.
  //!
  //! Raised by the rewriter and the generator decomposition when their
  //! verification fails; the assignment is a concrete witness that the
  //! supernilpotency degree the caller asserted is wrong.
  class SemanticMismatch : public Error {
   public:
    SemanticMismatch(std::string const&         msg,
                     std::vector<std::uint8_t>  assignment,
                     std::uint8_t               expected,
                     std::uint8_t               actual)
        : Error(msg),
          _assignment(std::move(assignment)),
          _expected(expected),
          _actual(actual) {}

    [[nodiscard]] std::vector<std::uint8_t> const& assignment() const noexcept {
      return _assignment;
    }
    [[nodiscard]] std::uint8_t expected() const noexcept {
      return _expected;
    }
    [[nodiscard]] std::uint8_t actual() const noexcept {
      return _actual;
    }

   private:
    std::vector<std::uint8_t> _assignment;
    std::uint8_t              _expected;
    std::uint8_t              _actual;
  };

  //! A closure ran out of its entry budget where completeness was required.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

}  // namespace cloneworks

#endif  // CLONEWORKS_ERROR_HPP_
