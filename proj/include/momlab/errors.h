// Copyright 2026 The momlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOMLAB_ERRORS_H
#define MOMLAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace momlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};
struct InvalidMeasurementError : Error {
    using Error::Error;
};
struct ImpossibleOutcomeError : Error {
    using Error::Error;
};
struct UnsupportedGaugeError : Error {
    using Error::Error;
};
struct GeometryError : Error {
    using Error::Error;
};
struct ProbabilityError : Error {
    using Error::Error;
};
struct EmptyEnsembleError : Error {
    using Error::Error;
};
struct NotBipartiteError : Error {
    using Error::Error;
};
struct ProtocolError : Error {
    using Error::Error;
};
struct NoCrossingError : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string &message, size_t line_number)
        : Error("line " + std::to_string(line_number) + ": " + message), line(line_number) {
    }
    size_t line;
};

}  // namespace momlab

#endif
