#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trainer.hpp"

namespace softexp {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

inline double parse_double(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" +
                         std::string(field) + "'");
    return v;
}

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Reads a dataset from CSV with header columns x0..x{n-1},y0..y{m-1}.
inline Dataset load_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("dataset is empty");
    std::vector<std::string_view> header = detail::split_csv(line);
    std::size_t n = 0;
    while (n < header.size() && header[n] == "x" + std::to_string(n)) ++n;
    std::size_t m = 0;
    while (n + m < header.size() && header[n + m] == "y" + std::to_string(m)) ++m;
    if (n == 0 || m == 0 || n + m != header.size())
        throw ParseError("dataset header must be x0..x{n-1},y0..y{m-1}");

    Dataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string_view> fields = detail::split_csv(line);
        if (fields.size() != n + m)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(n + m) + " fields, got " +
                             std::to_string(fields.size()));
        std::vector<double> xs(n), ys(m);
        for (std::size_t j = 0; j < n; ++j) xs[j] = detail::parse_double(fields[j], line_no);
        for (std::size_t j = 0; j < m; ++j) ys[j] = detail::parse_double(fields[n + j], line_no);
        data.inputs.push_back(std::move(xs));
        data.targets.push_back(std::move(ys));
    }
    validate_dataset(data);
    return data;
}

inline Dataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return load_dataset_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_dataset_csv(const Dataset& data, std::ostream& out) {
    validate_dataset(data);
    for (std::size_t j = 0; j < data.input_dim(); ++j)
        out << (j ? "," : "") << "x" << j;
    for (std::size_t j = 0; j < data.output_dim(); ++j)
        out << ",y" << j;
    out << "\n";
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t j = 0; j < data.input_dim(); ++j)
            out << (j ? "," : "") << detail::fmt17(data.inputs[r][j]);
        for (std::size_t j = 0; j < data.output_dim(); ++j)
            out << "," << detail::fmt17(data.targets[r][j]);
        out << "\n";
    }
}

inline void save_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    save_dataset_csv(data, out);
    if (!out) throw IoError("failed writing " + path);
}

} // namespace softexp
