#pragma once

#include <string_view>

#include "acc/defdom.hpp"

namespace acc {

// Reads a Def description over `scope`. Accepted forms:
//   bot
//   models([X,Y];[X];[])
//   a formula over `true`, variables, `&`, `->` (right associative) and `<->`,
//   with parentheses; `&` binds tighter than `->`, which binds tighter than `<->`.
// A formula whose models are not a definite function is rejected.
DefValue parse_value(std::string_view text, const Scope& scope);

}  // namespace acc
