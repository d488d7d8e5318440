#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "qlv/term.hpp"

namespace qlv {

/// Named propositions that a term may reference by identifier.
using PropEnv = std::map<std::string, Term, std::less<>>;

/// Parses the proposition syntax:
///
///     atoms       z1 x2 y3
///     constants   top bot
///     prefix      ~p   [H 1]p   [CNOT 1 2]p   [mz 1]p   [mx 2]p   [my 3]p
///     infix       &  ^  |  ->  <->      (tightest to loosest)
///
/// `->` associates to the right, the other infix operators to the left.
/// Identifiers that are not atoms or constants are looked up in `props` and
/// replaced by the named term. Throws ParseError with the offending offset.
Term parse_term(std::string_view text, const PropEnv* props = nullptr);

}  // namespace qlv
