// cloneworks - term operations of finite algebras
//
// The built-in example corpus, embedded in the same text format that
// parse_algebra reads. The files under data/ are identical copies; the A4
// tables are produced by tools/gen_a4.py.

#ifndef CLONEWORKS_BUILTINS_HPP_
#define CLONEWORKS_BUILTINS_HPP_

#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for pair
#include <vector>       // for vector

#include "algebra.hpp"
#include "error.hpp"

namespace cloneworks {

  //! Name and source text of every built-in algebra, in a fixed order.
  inline std::vector<std::pair<std::string_view, std::string_view>> const&
  builtin_sources() {
    static std::vector<std::pair<std::string_view, std::string_view>> const
        sources{
        {"z2-plus", R"ALG(algebra z2-plus
size 2
op plus 2
0 1
1 0
)ALG"},
        {"z3-plus", R"ALG(algebra z3-plus
size 3
op plus 2
0 1 2
1 2 0
2 0 1
)ALG"},
        {"z2-plus-maj", R"ALG(# Z2 with the redundant ternary sum x+y+z
algebra z2-plus-maj
size 2
op plus 2
0 1
1 0
op sum3 3
0 1
1 0
1 0
0 1
)ALG"},
        {"z2-ternary-only", R"ALG(# only the ternary sum x+y+z; x+y is not a term operation
algebra z2-ternary-only
size 2
op sum3 3
0 1
1 0
1 0
0 1
)ALG"},
        {"bool-andnot", R"ALG(algebra bool-andnot
size 2
op and 2
0 0
0 1
op not 1
1 0
)ALG"},
        {"bool-post", R"ALG(# Boolean primal basis: or, and, characteristic functions, units
algebra bool-post
size 2
op or 2
0 1
1 1
op and 2
0 0
0 1
op not 1
1 0
op id 1
0 1
op c0 0
0
op c1 0
1
designate plus or
designate times and
designate chi0 not
designate chi1 id
designate zero c0
designate one c1
)ALG"},
        {"semilattice2", R"ALG(algebra semilattice2
size 2
op and 2
0 0
0 1
)ALG"},
        {"three-post", R"ALG(# three-element primal basis: max with unit 0, multiplication mod 3,
# characteristic functions with values in {0,1}, all constants
algebra three-post
size 3
op max 2
0 1 2
1 1 2
2 2 2
op mul 2
0 0 0
0 1 2
0 2 1
op chi0 1
1 0 0
op chi1 1
0 1 0
op chi2 1
0 0 1
op c0 0
0
op c1 0
1
op c2 0
2
designate plus max
designate times mul
designate chi0 chi0
designate chi1 chi1
designate chi2 chi2
designate zero c0
designate one c1
)ALG"},
        {"z4-plus-one-2xy", R"ALG(# Z4 with the constant 1 and f(x,y) = 2xy
algebra z4-plus-one-2xy
size 4
op plus 2
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
op one 0
1
op twoxy 2
0 0 0 0
0 2 0 2
0 0 0 0
0 2 0 2
)ALG"},
        {"a4-group", R"ALG(# alternating group A4; element i is the i-th even permutation
# of 0123 in lexicographic order (0 is the identity)
algebra a4-group
size 12
op mul 2
0 1 2 3 4 5 6 7 8 9 10 11
1 2 0 6 8 7 9 11 10 3 4 5
2 0 1 9 10 11 3 5 4 6 8 7
3 5 4 0 2 1 10 9 11 7 6 8
4 3 5 7 6 8 0 1 2 10 11 9
5 4 3 10 11 9 7 8 6 0 2 1
6 7 8 1 0 2 4 3 5 11 9 10
7 8 6 4 5 3 11 10 9 1 0 2
8 6 7 11 9 10 1 2 0 4 5 3
9 11 10 2 1 0 8 6 7 5 3 4
10 9 11 5 3 4 2 0 1 8 7 6
11 10 9 8 7 6 5 4 3 2 1 0
op inv 1
0 2 1 3 6 9 4 10 8 5 7 11
op e 0
0
)ALG"},
        {"a4-commutator", R"ALG(# alternating group A4; element i is the i-th even permutation
# of 0123 in lexicographic order (0 is the identity)
algebra a4-commutator
size 12
op mul 2
0 1 2 3 4 5 6 7 8 9 10 11
1 2 0 6 8 7 9 11 10 3 4 5
2 0 1 9 10 11 3 5 4 6 8 7
3 5 4 0 2 1 10 9 11 7 6 8
4 3 5 7 6 8 0 1 2 10 11 9
5 4 3 10 11 9 7 8 6 0 2 1
6 7 8 1 0 2 4 3 5 11 9 10
7 8 6 4 5 3 11 10 9 1 0 2
8 6 7 11 9 10 1 2 0 4 5 3
9 11 10 2 1 0 8 6 7 5 3 4
10 9 11 5 3 4 2 0 1 8 7 6
11 10 9 8 7 6 5 4 3 2 1 0
op inv 1
0 2 1 3 6 9 4 10 8 5 7 11
op e 0
0
op comm 2
0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 8 11 3 8 3 11 8 11 3
0 0 0 11 3 8 11 8 3 11 3 8
0 8 11 0 11 8 8 11 0 11 8 0
0 11 3 11 0 3 0 11 3 8 8 8
0 3 8 8 3 0 11 11 11 0 8 3
0 8 11 8 0 11 0 8 11 3 3 3
0 3 8 11 11 11 8 0 3 3 0 8
0 11 3 0 3 11 11 3 0 3 11 0
0 8 11 11 8 0 3 3 3 0 11 8
0 11 3 8 8 8 3 0 11 11 0 3
0 3 8 0 8 3 3 8 0 8 3 0
)ALG"},
        };
    return sources;
  }

  inline std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (auto const& [name, text] : builtin_sources()) {
      out.emplace_back(name);
    }
    return out;
  }

  inline FiniteAlgebra builtin_algebra(std::string_view name) {
    for (auto const& [n, text] : builtin_sources()) {
      if (n == name) {
        return parse_algebra(text);
      }
    }
    throw Error("unknown builtin algebra '" + std::string(name) + "'");
  }

  //! Builtins whose free spectra are too large for default enumeration.
  inline bool builtin_explodes(std::string_view name) {
    return name.substr(0, 3) == "a4-";
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_BUILTINS_HPP_
