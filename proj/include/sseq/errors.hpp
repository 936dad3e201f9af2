#ifndef SSEQ_ERRORS_HPP
#define SSEQ_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace sseq {

/// Location of a statement or token in DSL input. Lines and columns are
/// 1-based; the column range is inclusive.
struct SourceSpan {
    int line = 1;
    int col_begin = 1;
    int col_end = 1;
};

enum class ErrorKind {
    Syntax,
    UnknownGrading,
    DuplicateName,
    DegreeMismatch,
    DeadClass,
    DuplicateKill,
    NotDead,
    UnknownClass,
    UnsupportedChart,
    SlopeMismatch,
    InvalidParams,
    ZeroValuation,
    EmptyRange,
    TooManyStacked,
    PositionClash,
    Sealed,
    Overflow,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    Error(ErrorKind kind, const std::string& message, SourceSpan span)
        : std::runtime_error(message), kind_(kind), span_(span) {}

    ErrorKind kind() const { return kind_; }
    const std::optional<SourceSpan>& span() const { return span_; }

    /// Same error with a span attached; used by the parser to locate
    /// chart-level failures in the input text.
    Error with_span(SourceSpan span) const { return Error(kind_, what(), span); }

private:
    ErrorKind kind_;
    std::optional<SourceSpan> span_;
};

}  // namespace sseq

#endif
