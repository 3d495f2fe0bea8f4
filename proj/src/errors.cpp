#include "trendsim/errors.hpp"

namespace trendsim {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::UnknownUser: return "UnknownUser";
        case Errc::UnknownOriginal: return "UnknownOriginal";
        case Errc::RetweetOfRetweet: return "RetweetOfRetweet";
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::KeywordMismatch: return "KeywordMismatch";
        case Errc::AuthorMismatch: return "AuthorMismatch";
        case Errc::ParseError: return "ParseError";
        case Errc::IntegrityError: return "IntegrityError";
        case Errc::FileError: return "FileError";
        case Errc::BadFrame: return "BadFrame";
        case Errc::TooFewSamples: return "TooFewSamples";
        case Errc::DegenerateSamples: return "DegenerateSamples";
        case Errc::AllBelowCutoff: return "AllBelowCutoff";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::ConfigError: return "ConfigError";
        case Errc::ModerationNotApplied: return "ModerationNotApplied";
        case Errc::NoGroundTruth: return "NoGroundTruth";
        case Errc::VerifyFailed: return "VerifyFailed";
    }
    return "Error";
}

}  // namespace trendsim
