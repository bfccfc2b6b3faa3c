// Copyright 2026 The qgns Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception type shared by every qgns module.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgns {

/// Classifies domain errors so the CLI can emit machine-readable reports.
enum class ErrorKind {
    Parse,
    SelfLoop,
    DuplicateEdge,
    IndexOutOfRange,
    InvalidArgument,
    SizeMismatch,
    CapExceeded,
    Unnormalized,
    ZeroNorm,
    MissingEdge,
    Unsupported,
    Divergence,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse:
        return "parse";
    case ErrorKind::SelfLoop:
        return "self_loop";
    case ErrorKind::DuplicateEdge:
        return "duplicate_edge";
    case ErrorKind::IndexOutOfRange:
        return "index_out_of_range";
    case ErrorKind::InvalidArgument:
        return "invalid_argument";
    case ErrorKind::SizeMismatch:
        return "size_mismatch";
    case ErrorKind::CapExceeded:
        return "cap_exceeded";
    case ErrorKind::Unnormalized:
        return "unnormalized";
    case ErrorKind::ZeroNorm:
        return "zero_norm";
    case ErrorKind::MissingEdge:
        return "missing_edge";
    case ErrorKind::Unsupported:
        return "unsupported";
    case ErrorKind::Divergence:
        return "divergence";
    case ErrorKind::Io:
        return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_{kind} {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Throws `Error(kind, message)` unless `condition` holds.
inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) {
        throw Error(kind, message);
    }
}

} // namespace qgns
