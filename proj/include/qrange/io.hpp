// Copyright 2026 The qrange Authors.
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

// JSON document formats and serialization. Measurements are exchanged as
//
//   {"label": "...", "effects": [{"t": ., "s": [., ., .]} |
//                                {"matrix": [[[re,im],[re,im]],[[re,im],[re,im]]]}]}
//
// and tables / witness matrices as {"rows": [[...], ...]}. Output numbers are
// rendered with 12 significant digits through a custom dumper, which keeps
// byte-level reproducibility independent of the JSON library's float printer.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrange/povm.hpp"

namespace qrange::io {

using json = nlohmann::ordered_json;

//------------------------------------------------------------------------
// number and document rendering
//------------------------------------------------------------------------

inline std::string format_number(double x) {
    if (!std::isfinite(x)) throw Error("refusing to serialize a non-finite number");
    if (x == 0.0) return "0";  // normalizes -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace detail {
inline void dump_rec(const json& j, std::string& out, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent <= 0) return;
        out.push_back('\n');
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out.push_back('{');
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out.push_back(',');
                first = false;
                newline(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out.push_back(':');
                if (indent > 0) out.push_back(' ');
                dump_rec(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out.push_back('}');
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out.push_back('[');
            bool first = true;
            for (const auto& v : j) {
                if (!first) out.push_back(',');
                first = false;
                newline(depth + 1);
                dump_rec(v, out, indent, depth + 1);
            }
            newline(depth);
            out.push_back(']');
            return;
        }
        case json::value_t::string:
            out += nlohmann::json(j.get<std::string>()).dump();
            return;
        case json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            return;
        case json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            return;
        case json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += "null";
            return;
    }
}
}  // namespace detail

inline std::string dump_json(const json& j, bool pretty = false) {
    std::string out;
    detail::dump_rec(j, out, pretty ? 2 : 0, 0);
    return out;
}

//------------------------------------------------------------------------
// file helpers
//------------------------------------------------------------------------

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw ParseError("write failed: " + path);
}

//------------------------------------------------------------------------
// measurement documents
//------------------------------------------------------------------------

struct PovmDocument {
    std::string label;
    std::vector<Effect> effects;
};

namespace detail {
inline double number_at(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
    return j.get<double>();
}

inline std::complex<double> complex_at(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError("matrix entry: expected [re, im]");
}
}  // namespace detail

// Decodes effects without POVM-level validation (hermiticity of matrix-form
// effects is still enforced); used by the validate command to report
// residuals for invalid inputs.
inline PovmDocument parse_povm_document(const nlohmann::json& j,
                                        double tol = kValidationTol) {
    if (!j.is_object()) throw ParseError("measurement document: expected an object");
    PovmDocument doc;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ParseError("label: expected a string");
        doc.label = j["label"].get<std::string>();
    }
    if (!j.contains("effects") || !j["effects"].is_array())
        throw ParseError("measurement document: missing \"effects\" array");
    for (const auto& ej : j["effects"]) {
        if (!ej.is_object()) throw ParseError("effect: expected an object");
        if (ej.contains("matrix")) {
            const auto& mj = ej["matrix"];
            if (!mj.is_array() || mj.size() != 2 || !mj[0].is_array() ||
                !mj[1].is_array() || mj[0].size() != 2 || mj[1].size() != 2)
                throw ParseError("matrix: expected a 2x2 array");
            Mat2c m{detail::complex_at(mj[0][0]), detail::complex_at(mj[0][1]),
                    detail::complex_at(mj[1][0]), detail::complex_at(mj[1][1])};
            doc.effects.push_back(qrange::detail::decompose_hermitian(m, tol));
        } else if (ej.contains("t") && ej.contains("s")) {
            const auto& sj = ej["s"];
            if (!sj.is_array() || sj.size() != 3)
                throw ParseError("effect \"s\": expected 3 numbers");
            doc.effects.push_back({detail::number_at(ej["t"], "effect \"t\""),
                                   {detail::number_at(sj[0], "effect \"s\""),
                                    detail::number_at(sj[1], "effect \"s\""),
                                    detail::number_at(sj[2], "effect \"s\"")}});
        } else {
            throw ParseError("effect: expected \"matrix\" or \"t\"/\"s\" fields");
        }
    }
    return doc;
}

inline Povm load_povm(const nlohmann::json& j, double tol = kValidationTol) {
    PovmDocument doc = parse_povm_document(j, tol);
    return validate_povm(std::move(doc.effects), std::move(doc.label), tol);
}

inline Povm load_povm_file(const std::string& path, double tol = kValidationTol) {
    return load_povm(read_json_file(path), tol);
}

inline json povm_to_json(const Povm& p) {
    json j;
    if (!p.label().empty()) j["label"] = p.label();
    json effects = json::array();
    for (const Effect& e : p.effects()) {
        json ej;
        ej["t"] = e.t;
        ej["s"] = {e.s[0], e.s[1], e.s[2]};
        effects.push_back(std::move(ej));
    }
    j["effects"] = std::move(effects);
    return j;
}

//------------------------------------------------------------------------
// row matrices (tables, witnesses)
//------------------------------------------------------------------------

inline Matrix load_rows(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array() ||
        j["rows"].empty())
        throw ParseError("expected an object with a non-empty \"rows\" array");
    const auto& rows = j["rows"];
    const std::size_t m = rows.size();
    if (!rows[0].is_array() || rows[0].empty())
        throw ParseError("rows: expected arrays of numbers");
    const std::size_t n = rows[0].size();
    Matrix out(m, n);
    for (std::size_t x = 0; x < m; ++x) {
        if (!rows[x].is_array() || rows[x].size() != n)
            throw ParseError("rows: ragged row lengths");
        for (std::size_t y = 0; y < n; ++y)
            out(x, y) = detail::number_at(rows[x][y], "rows entry");
    }
    return out;
}

inline Matrix load_rows_file(const std::string& path) {
    return load_rows(read_json_file(path));
}

//------------------------------------------------------------------------
// CSV
//------------------------------------------------------------------------

// Comma-separated, header row first, LF line endings, numbers at 12
// significant digits.
inline std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += cells[i];
    }
    out.push_back('\n');
    return out;
}

inline std::string csv_numeric_line(std::span<const double> values,
                                    const std::string& prefix = {}) {
    std::string out = prefix;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i || !prefix.empty()) out.push_back(',');
        out += format_number(values[i]);
    }
    out.push_back('\n');
    return out;
}

}  // namespace qrange::io
