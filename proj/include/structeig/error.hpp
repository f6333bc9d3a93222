// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace structeig {

/// Failure categories surfaced by the library. The numeric values are shared
/// with the C API status codes.
enum class ErrorCode : int {
  kDimension = 1,
  kIllConditioned = 2,
  kStructureDegenerate = 3,
  kStalledStep = 4,
  kNoCrossing = 5,
  kParse = 6,
  kIo = 7,
  kInvalidArgument = 8,
  kEigensolver = 9,
  kNotWellPosed = 10,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace structeig
