// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace swapscan {

// Error classes map 1:1 onto CLI exit codes.
enum class Errc : int {
    ok = 0,
    usage = 2,       // bad flags, unreadable or invalid config/params
    io = 3,          // file system failures
    corpus = 4,      // record-level validation (dangling refs, bad schema, ...)
    mismatch = 5,    // stage inputs come from different corpora
    infeasible = 6,  // generator config cannot be satisfied
    internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), code_(code), kind_(std::move(kind)) {}

    Errc code() const noexcept { return code_; }

    // Stable machine-checkable identifier, e.g. "dangling_reference".
    const std::string& kind() const noexcept { return kind_; }

private:
    Errc code_;
    std::string kind_;
};

[[noreturn]] inline void raise(Errc code, std::string kind, const std::string& what) {
    throw Error(code, std::move(kind), what);
}

}  // namespace swapscan
