#ifndef SSEQ_DSL_HPP
#define SSEQ_DSL_HPP

#include <string>

#include "sseq/chart.hpp"

namespace sseq {

/// Parses the line-oriented .sseq chart description language.
///
/// Grammar (one statement per line, '#' starts a comment, whitespace is
/// insignificant inside parentheses):
///
///   grading (adams | serre-cohomological | serre-homological | custom a b c d)
///   lax
///   class (n,s) [name=<ident>] [tag=<ident>] [opt key=value ...]
///   d <r> (n,s[,i]) (n',s'[,j])
///   structline (n,s[,i]) (n',s'[,j]) [label=<ident>] [page=<r>]
///   replaceclass (n,s[,i]) page=<r>
///
/// Omitted indices default to 0. Numbers are signed decimal integers.
/// Statements apply in order with chart semantics; every failure carries a
/// SourceSpan inside the offending statement. Returns a sealed chart.
Chart parse(const std::string& text);

/// Canonical, deterministic serialization: grading first, classes sorted by
/// (stem, filtration, index), then differentials grouped by ascending page
/// with the replaceclass lines they enable, then structlines. A fixed point
/// of parse followed by serialize.
std::string serialize(const Chart& chart);

}  // namespace sseq

#endif
