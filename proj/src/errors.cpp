#include "sseq/errors.hpp"

namespace sseq {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::UnknownGrading: return "UnknownGrading";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::DeadClass: return "DeadClass";
        case ErrorKind::DuplicateKill: return "DuplicateKill";
        case ErrorKind::NotDead: return "NotDead";
        case ErrorKind::UnknownClass: return "UnknownClass";
        case ErrorKind::UnsupportedChart: return "UnsupportedChart";
        case ErrorKind::SlopeMismatch: return "SlopeMismatch";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::ZeroValuation: return "ZeroValuation";
        case ErrorKind::EmptyRange: return "EmptyRange";
        case ErrorKind::TooManyStacked: return "TooManyStacked";
        case ErrorKind::PositionClash: return "PositionClash";
        case ErrorKind::Sealed: return "Sealed";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

}  // namespace sseq
