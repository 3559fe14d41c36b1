#pragma once

#include "oscrank/set.hpp"

namespace oscrank {

/// Textual set literals for the CLI:
///   intervals "[0+,1-]" (round bracket = excluded end), points "{3}",
///   products with "×" (ascii alias "x"), unions with "∪" (alias "|"),
///   infinities "-inf"/"+inf", tags "-"/"+" for the lower/upper cut at a
///   rational, "{}" for the empty set. Strict: anything else is rejected.
/// Supported on cut lines, products and the cyclic space.
SymbolicSet parse_set_literal(const SpacePtr& sp, const std::string& text);

}  // namespace oscrank
