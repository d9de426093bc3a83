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

#include "optfalsify/error.hpp"

namespace optf {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::NotPSD:
            return "NotPSD";
        case ErrorKind::NoConvergence:
            return "NoConvergence";
        case ErrorKind::NonFinite:
            return "NonFinite";
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::InvalidEffect:
            return "InvalidEffect";
        case ErrorKind::InvalidChannel:
            return "InvalidChannel";
        case ErrorKind::NotDeterministic:
            return "NotDeterministic";
        case ErrorKind::NotTracePreserving:
            return "NotTracePreserving";
        case ErrorKind::NotSamePurifiedState:
            return "NotSamePurifiedState";
        case ErrorKind::NotCompressible:
            return "NotCompressible";
        case ErrorKind::NotNormalized:
            return "NotNormalized";
        case ErrorKind::Dim1:
            return "Dim1";
        case ErrorKind::FullSupport:
            return "FullSupport";
        case ErrorKind::InvalidTest:
            return "InvalidTest";
        case ErrorKind::NumericalContamination:
            return "NumericalContamination";
        case ErrorKind::OutOfRange:
            return "OutOfRange";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {
}

}  // namespace optf
