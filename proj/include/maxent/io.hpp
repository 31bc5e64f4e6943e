// Copyright 2026 The maxent workbench authors
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

/// Output plumbing for the CLI: RFC-4180 CSV framing, deterministic float
/// formatting, and complex-number serialization ({re, im} objects in JSON,
/// paired _re/_im columns in CSV).

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "maxent/core.hpp"

#include "json.hpp"

namespace maxent {
namespace io {

/// Shortest round-trip decimal representation.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json to_json(cdouble v) { return nlohmann::json{{"re", v.real()}, {"im", v.imag()}}; }

inline nlohmann::json to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::json to_json(const Vec& v) {
    nlohmann::json out = nlohmann::json::array();
    for (long i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(const std::vector<std::string>& fields) {
        if (fields.size() != header_.size()) throw ParameterError("CsvWriter: field count mismatch");
        rows_.push_back(fields);
    }

    std::string str() const {
        std::ostringstream out;
        write_line(out, header_);
        for (const auto& r : rows_) write_line(out, r);
        return out.str();
    }

  private:
    static void write_line(std::ostringstream& out, const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << quoted(fields[i]);
        }
        out << "\r\n";  // RFC 4180 line ending
    }

    static std::string quoted(const std::string& f) {
        if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) {
            if (c == '"') q += '"';
            q += c;
        }
        q += '"';
        return q;
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to the path, or stdout when the path is empty.
inline void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

/// Parses the grid syntax start:stop:step (inclusive stop within 1e-12) or a
/// single value.
inline std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    auto p1 = spec.find(':');
    if (p1 == std::string::npos) {
        out.push_back(std::stod(spec));
        return out;
    }
    auto p2 = spec.find(':', p1 + 1);
    if (p2 == std::string::npos) throw ParameterError("grid syntax is start:stop:step");
    double start = std::stod(spec.substr(0, p1));
    double stop = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
    double step = std::stod(spec.substr(p2 + 1));
    if (step <= 0) throw ParameterError("grid step must be positive");
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
    return out;
}

}  // namespace io
}  // namespace maxent
