#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kfc {

enum class ErrorKind {
    io,                   // filesystem / storage failure
    not_a_container,      // file exists but is not a knowledge container
    unsupported_version,  // container written by a newer format version
    already_exists,       // create over an existing container
    read_only_handle,     // mutation attempted through a read-only handle
    constraint,           // schema or index constraint violated, commit aborted
    bad_encoding,         // input is not valid UTF-8
    empty_query,          // query is empty after normalization
    degenerate_weights,   // alpha == 0 and beta == 0
    precondition,         // caller broke an operation contract
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace kfc
