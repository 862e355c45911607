// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dftis {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: empty sequences, mixed lengths, mismatched eigenvalues.
class invalid_input : public error {
public:
    using error::error;
};

/// The input is the zero sequence (or numerically indistinguishable from it).
class degenerate_input : public error {
public:
    using error::error;
};

class scheduling_error : public error {
public:
    using error::error;
};

/// Bitstream lengths that cannot be split into whole words.
class framing_error : public error {
public:
    using error::error;
};

/// A coefficient outside the quantizer range [-M, M].
class range_error : public error {
public:
    using error::error;
};

class demodulation_error : public error {
public:
    demodulation_error(std::size_t frame, const std::string& what)
        : error("frame " + std::to_string(frame) + ": " + what), frame_(frame) {}

    std::size_t frame() const noexcept { return frame_; }

private:
    std::size_t frame_;
};

/// A computed result that violates an invariant it must satisfy (residue, singular matrix).
class numerical_error : public error {
public:
    using error::error;
};

class configuration_error : public error {
public:
    using error::error;
};

/// Unreadable or malformed interchange files.
class parse_error : public error {
public:
    using error::error;
};

} // namespace dftis
