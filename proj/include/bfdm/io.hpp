// SPDX-License-Identifier: Apache-2.0
//
// CSV serialization helpers. All floating point output goes through one
// formatting routine so that repeated runs with the same seed produce
// byte-identical files.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bfdm/types.hpp"

namespace bfdm {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

/// Serialize a complex signal as "index,re,im" rows with a header line.
inline std::string signal_to_csv(const cvec& x) {
    std::ostringstream out;
    out << "index,re,im\n";
    for (std::size_t n = 0; n < x.size(); ++n)
        out << n << ',' << format_double(x[n].real()) << ','
            << format_double(x[n].imag()) << '\n';
    return out.str();
}

/// Parse "index,re,im" CSV (header optional). Rows must be dense in index.
inline cvec signal_from_csv(std::istream& in) {
    cvec out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("index", 0) == 0) continue;  // header
        std::size_t idx;
        double re, im;
        if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &idx, &re, &im) != 3)
            throw config_error("signal CSV: malformed row: " + line);
        if (idx != out.size())
            throw config_error("signal CSV: indices must be dense and ordered");
        out.emplace_back(re, im);
    }
    if (out.empty()) throw config_error("signal CSV: no samples");
    return out;
}

inline cvec load_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open signal file: " + path);
    return signal_from_csv(in);
}

inline void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << text;
}

/// One row of a long-format experiment result table. `schema` is bumped when
/// the column set changes.
struct ResultRow {
    std::string experiment;
    std::string waveform;
    std::string x_name;
    double x_value = 0.0;
    std::string aux_name;
    double aux_value = 0.0;
    std::string metric;
    double value = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

inline std::string result_csv_header() {
    return "schema,experiment,waveform,x_name,x_value,aux_name,aux_value,"
           "metric,value,trials,seed\n";
}

inline std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << result_csv_header();
    for (const ResultRow& r : rows) {
        out << 1 << ',' << r.experiment << ',' << r.waveform << ','
            << r.x_name << ',' << format_double(r.x_value) << ','
            << r.aux_name << ',' << format_double(r.aux_value) << ','
            << r.metric << ',' << format_double(r.value) << ','
            << r.trials << ',' << r.seed << '\n';
    }
    return out.str();
}

}  // namespace bfdm
