#pragma once

#include <stdexcept>

namespace qnet {

/// Base class for all qnet errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SelfLoopError : Error {
    using Error::Error;
};
struct DuplicateQuestionError : Error {
    using Error::Error;
};
struct UnknownItemError : Error {
    using Error::Error;
};
struct UnknownQuestionError : Error {
    using Error::Error;
};
struct EmptyNetError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct InfeasibleError : Error {
    using Error::Error;
};
struct MaxRetriesError : Error {
    using Error::Error;
};
struct SizeMismatchError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct InsufficientSupportError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace qnet
