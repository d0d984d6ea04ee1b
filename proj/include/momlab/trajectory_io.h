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

#ifndef MOMLAB_TRAJECTORY_IO_H
#define MOMLAB_TRAJECTORY_IO_H

#include <iosfwd>
#include <string>
#include <vector>

#include "momlab/protocols.h"

namespace momlab {

inline constexpr const char *kCsvSchema = "# momlab-csv v1";

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

/// Writes the schema line, a header "seed,t,observable,value,<params...>"
/// and one row per probe event. Parameter columns are the union of all
/// records' keys in first-seen order; missing values are left empty.
void write_csv(std::ostream &out, const std::vector<TrajectoryRecord> &records);

/// Reads a file produced by write_csv. Consecutive rows with the same seed
/// and parameters are grouped into one record. Throws ParseError on a
/// missing or unknown schema line or malformed rows.
std::vector<TrajectoryRecord> read_csv(std::istream &in);

}  // namespace momlab

#endif
