#include "fraclbp/core.hpp"

namespace fraclbp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::CorruptHeader: return "CorruptHeader";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ImageTooSmall: return "ImageTooSmall";
        case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::EmptyImage: return "EmptyImage";
        case ErrorCode::BadDelta: return "BadDelta";
        case ErrorCode::ZeroMass: return "ZeroMass";
        case ErrorCode::NumericalOverflow: return "NumericalOverflow";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DegenerateData: return "DegenerateData";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::UnknownLabelSpace: return "UnknownLabelSpace";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::BatchFailed: return "BatchFailed";
    }
    return "Unknown";
}

}  // namespace fraclbp
