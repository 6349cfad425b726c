#pragma once

#include <stdexcept>
#include <string>

namespace veristruct {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Source text whose construct boundaries cannot be determined (unterminated
// string/comment, unbalanced delimiters).
struct MalformedSource : Error {
    using Error::Error;
};

struct VerifierUnavailable : Error {
    using Error::Error;
};

struct VerifierTimeout : Error {
    using Error::Error;
};

struct WorkspaceError : Error {
    using Error::Error;
};

struct ProviderError : Error {
    using Error::Error;
};

// Replay key absent from the transcript store. Fatal: names the missing key.
struct ReplayMiss : Error {
    using Error::Error;
};

struct PlanParseError : Error {
    using Error::Error;
};

struct LocationOutOfRange : Error {
    using Error::Error;
};

struct InsufficientRuns : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace veristruct
