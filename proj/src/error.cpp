#include "zpwalk/error.hpp"

namespace zpwalk {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidModulus: return "InvalidModulus";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::ShapeError: return "ShapeError";
        case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorCode::NormUndefined: return "NormUndefined";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateVertexInEdge: return "DuplicateVertexInEdge";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::EdgeTooSmall: return "EdgeTooSmall";
        case ErrorCode::NoPath: return "NoPath";
        case ErrorCode::IllegalMove: return "IllegalMove";
        case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
        case ErrorCode::NotGood: return "NotGood";
        case ErrorCode::Mismatch: return "Mismatch";
        case ErrorCode::PairNotGood: return "PairNotGood";
        case ErrorCode::NonzeroRequired: return "NonzeroRequired";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::Unsolvable: return "Unsolvable";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::SynthesisIncomplete: return "SynthesisIncomplete";
        case ErrorCode::InternalSynthesisFailure: return "InternalSynthesisFailure";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

}  // namespace zpwalk
