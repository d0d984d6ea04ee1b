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

#include "momlab/trajectory_io.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "momlab/errors.h"

namespace momlab {

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

static void write_field(std::ostream &out, const std::string &field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

void write_csv(std::ostream &out, const std::vector<TrajectoryRecord> &records) {
    std::vector<std::string> keys;
    for (const auto &rec : records) {
        for (const auto &[k, v] : rec.params) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(k);
            }
        }
    }
    out << kCsvSchema << "\n";
    out << "seed,t,observable,value";
    for (const auto &k : keys) {
        out << ',';
        write_field(out, k);
    }
    out << "\n";
    for (const auto &rec : records) {
        std::string tail;
        for (const auto &k : keys) {
            tail.push_back(',');
            std::string v = rec.param(k);
            if (v.find_first_of(",\"\n") == std::string::npos) {
                tail += v;
            } else {
                tail.push_back('"');
                for (char c : v) {
                    if (c == '"') {
                        tail.push_back('"');
                    }
                    tail.push_back(c);
                }
                tail.push_back('"');
            }
        }
        std::string seed = std::to_string(rec.seed);
        for (const auto &row : rec.rows) {
            out << seed << ',' << format_number(row.t) << ',';
            write_field(out, row.observable);
            out << ',' << format_number(row.value) << tail << "\n";
        }
    }
}

static std::vector<std::string> split_csv_line(const std::string &line, size_t line_number) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); i++) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back().push_back('"');
                    i++;
                } else {
                    quoted = false;
                }
            } else {
                fields.back().push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back().push_back(c);
        }
    }
    if (quoted) {
        throw ParseError("unterminated quote", line_number);
    }
    return fields;
}

static double parse_double(const std::string &text, size_t line_number) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("not a number: \"" + text + "\"", line_number);
    }
    return value;
}

std::vector<TrajectoryRecord> read_csv(std::istream &in) {
    std::string line;
    size_t line_number = 1;
    if (!std::getline(in, line) || line != kCsvSchema) {
        throw ParseError("expected schema line \"" + std::string(kCsvSchema) + "\"", line_number);
    }
    line_number++;
    if (!std::getline(in, line)) {
        throw ParseError("missing header", line_number);
    }
    auto header = split_csv_line(line, line_number);
    const std::vector<std::string> fixed = {"seed", "t", "observable", "value"};
    if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.begin())) {
        throw ParseError("header must start with seed,t,observable,value", line_number);
    }
    std::vector<TrajectoryRecord> records;
    while (std::getline(in, line)) {
        line_number++;
        if (line.empty()) {
            continue;
        }
        auto fields = split_csv_line(line, line_number);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_number);
        }
        uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), seed);
        if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
            throw ParseError("bad seed \"" + fields[0] + "\"", line_number);
        }
        std::vector<std::pair<std::string, std::string>> params;
        for (size_t c = 4; c < header.size(); c++) {
            if (!fields[c].empty()) {
                params.emplace_back(header[c], fields[c]);
            }
        }
        if (records.empty() || records.back().seed != seed || records.back().params != params) {
            records.emplace_back();
            records.back().seed = seed;
            records.back().params = std::move(params);
        }
        records.back().rows.push_back(
            {parse_double(fields[1], line_number), fields[2], parse_double(fields[3], line_number)});
    }
    return records;
}

}  // namespace momlab
