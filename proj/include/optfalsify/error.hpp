// Copyright 2026 The optfalsify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optf {

enum class ErrorKind {
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    NoConvergence,
    NonFinite,
    InvalidState,
    InvalidEffect,
    InvalidChannel,
    NotDeterministic,
    NotTracePreserving,
    NotSamePurifiedState,
    NotCompressible,
    NotNormalized,
    Dim1,
    FullSupport,
    InvalidTest,
    NumericalContamination,
    OutOfRange,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what);

    ErrorKind kind() const noexcept {
        return kind_;
    }

  private:
    ErrorKind kind_;
};

}  // namespace optf
