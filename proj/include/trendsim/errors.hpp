#pragma once

#include <stdexcept>
#include <string>

namespace trendsim {

enum class Errc {
    // corpus
    UnknownUser,
    UnknownOriginal,
    RetweetOfRetweet,
    DuplicateId,
    KeywordMismatch,
    AuthorMismatch,
    ParseError,
    IntegrityError,
    FileError,
    // statistics
    BadFrame,
    TooFewSamples,
    DegenerateSamples,
    AllBelowCutoff,
    EmptyInput,
    // config / pipeline
    ConfigError,
    ModerationNotApplied,
    NoGroundTruth,
    VerifyFailed,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace trendsim
