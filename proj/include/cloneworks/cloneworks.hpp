// cloneworks - term operations of finite algebras
//
// Umbrella header.

#ifndef CLONEWORKS_CLONEWORKS_HPP_
#define CLONEWORKS_CLONEWORKS_HPP_

#include "algebra.hpp"
#include "bounds.hpp"
#include "builtins.hpp"
#include "cli.hpp"
#include "clone.hpp"
#include "error.hpp"
#include "malcev.hpp"
#include "primal.hpp"
#include "report.hpp"
#include "rewrite.hpp"
#include "term.hpp"

#endif  // CLONEWORKS_CLONEWORKS_HPP_
