#pragma once

// File formats. CSV numbers are written with %.17g so a write/read round
// trip reproduces every double exactly; JSON uses nlohmann's ordered_json so
// key order (and therefore the output bytes) is deterministic.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"

namespace reeblab {

using json = nlohmann::ordered_json;

inline std::string format_g17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw argument_error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw argument_error("failed while writing '" + path + "'");
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_number(const std::string& field, long line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw parse_error("expected a number, got '" + field + "'", line_no);
    return v;
}

} // namespace detail

// Read a sampled curve from CSV. The header must be exactly
// s,c1,...,cd for the model's ambient dimension d; every data row carries
// the parameter followed by d coordinates. Errors report 1-based lines.
inline Curve read_curve_csv(const ManifoldModel& model, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open '" + path + "'");

    const int d = model.ambient_dim;
    std::string expected = "s";
    for (int i = 1; i <= d; ++i) expected += ",c" + std::to_string(i);

    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw parse_error("empty file", 1);
    ++line_no;
    {
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == '\n'))
            trimmed.pop_back();
        if (trimmed != expected)
            throw parse_error("header must be '" + expected + "'", line_no);
    }

    std::vector<double> s;
    std::vector<Vec> pts;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != static_cast<std::size_t>(d) + 1)
            throw parse_error("expected " + std::to_string(d + 1) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_no);
        s.push_back(detail::parse_number(fields[0], line_no));
        Vec p(d);
        for (int i = 0; i < d; ++i) p[i] = detail::parse_number(fields[i + 1], line_no);
        pts.push_back(std::move(p));
    }
    return Curve::sampled(model, std::move(s), std::move(pts));
}

} // namespace reeblab
