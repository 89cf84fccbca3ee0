#pragma once

#include <stdexcept>

namespace macc {

// Base class for all failures this library reports.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad PGM header, bad container framing, bad code table.
struct ParseError : Error {
    using Error::Error;
};

// Input is not a MACC container at all.
struct BadMagic : ParseError {
    using ParseError::ParseError;
};

// Container magic is right but the version byte is not supported.
struct BadVersion : ParseError {
    using ParseError::ParseError;
};

// A well-formed stream whose contents are internally inconsistent.
struct CorruptError : Error {
    using Error::Error;
};

// Caller-supplied configuration or arguments violate a precondition.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace macc
