#ifndef ZPWALK_ERROR_HPP
#define ZPWALK_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zpwalk {

enum class ErrorCode {
    InvalidModulus,
    NoInverse,
    ShapeError,
    EnumerationTooLarge,
    NormUndefined,
    ParseError,
    DuplicateVertexInEdge,
    VertexOutOfRange,
    DuplicateEdge,
    EdgeTooSmall,
    NoPath,
    IllegalMove,
    StateSpaceTooLarge,
    NotGood,
    Mismatch,
    PairNotGood,
    NonzeroRequired,
    HypothesisViolated,
    Unsolvable,
    Unreachable,
    SynthesisIncomplete,
    InternalSynthesisFailure,
    Infeasible,
    UsageError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `detail` carries the one integer
/// payload some errors have: the failing step of a schedule, the line of a
/// parse error, or the (saturated) solution count of an enumeration.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::uint64_t detail = 0)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    std::uint64_t detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::uint64_t detail_;
};

}  // namespace zpwalk

#endif  // ZPWALK_ERROR_HPP
