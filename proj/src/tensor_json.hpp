#pragma once

// Internal helpers for the JSON weights files. Writing is hand-rolled so
// every number carries exactly 17 significant digits, which keeps
// save -> load -> save byte-identical and round-trips value-exact.

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsa/errors.hpp"
#include "bsa/numerics.hpp"

namespace bsa::detail {

inline void append_double(std::string& out, double v) {
    if (!std::isfinite(v)) throw DataError("weights contain a non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

inline void append_vector(std::string& out, std::span<const double> v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        append_double(out, v[i]);
    }
    out += ']';
}

inline void append_matrix(std::string& out, const Matrix& m) {
    out += '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += ',';
        append_vector(out, std::span<const double>(m.row(r), m.cols()));
    }
    out += ']';
}

inline void append_key(std::string& out, const char* key) {
    out += '"';
    out += key;
    out += "\":";
}

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw WeightsFormatError("weights file: missing key '" + std::string(key) + "' in " + where);
    }
    return *it;
}

inline std::size_t read_count(const nlohmann::json& j, const char* key, const std::string& where) {
    const auto& v = require_key(j, key, where);
    if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw WeightsFormatError("weights file: '" + std::string(key) + "' must be an integer");
    }
    long long n = v.get<long long>();
    if (n < 0) throw WeightsFormatError("weights file: '" + std::string(key) + "' must be non-negative");
    return static_cast<std::size_t>(n);
}

inline std::vector<double> read_vector(const nlohmann::json& j, const char* key, std::size_t len) {
    const auto& v = require_key(j, key, "weights");
    if (!v.is_array()) throw WeightsFormatError("weights file: '" + std::string(key) + "' must be an array");
    if (v.size() != len) {
        throw WeightsDimensionError("weights file: '" + std::string(key) + "' has length " +
                                    std::to_string(v.size()) + ", expected " + std::to_string(len));
    }
    std::vector<double> out;
    out.reserve(len);
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw WeightsFormatError("weights file: '" + std::string(key) + "' has a non-numeric entry");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

inline Matrix read_matrix(const nlohmann::json& j, const char* key, std::size_t rows,
                          std::size_t cols) {
    const auto& v = require_key(j, key, "weights");
    if (!v.is_array()) throw WeightsFormatError("weights file: '" + std::string(key) + "' must be an array");
    if (v.size() != rows) {
        throw WeightsDimensionError("weights file: '" + std::string(key) + "' has " +
                                    std::to_string(v.size()) + " rows, expected " +
                                    std::to_string(rows));
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = v[r];
        if (!row.is_array() || row.size() != cols) {
            throw WeightsDimensionError("weights file: '" + std::string(key) + "' row " +
                                        std::to_string(r) + " has wrong width, expected " +
                                        std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number()) {
                throw WeightsFormatError("weights file: '" + std::string(key) +
                                         "' has a non-numeric entry");
            }
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open weights file: " + path);
    std::string text;
    char buf[1 << 16];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
    std::fclose(f);
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw WeightsFormatError("malformed weights file: " + path);
    return j;
}

}  // namespace bsa::detail
