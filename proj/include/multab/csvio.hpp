// Tabulation CSV: header "k,delta,M", one row of exact decimal integers
// per k. Shared by the tabulate runner and the report reader.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace multab {

inline constexpr const char* kCsvHeader = "k,delta,M\n";

struct CsvRow {
    std::uint64_t k = 0;
    std::uint64_t delta = 0;
    std::uint64_t m = 0;
};

inline void append_csv_row(std::string& buf, std::uint64_t k, std::uint64_t delta,
                           std::uint64_t m) {
    char line[72];
    char* p = line;
    auto put = [&p](std::uint64_t v) { p = std::to_chars(p, p + 24, v).ptr; };
    put(k);
    *p++ = ',';
    put(delta);
    *p++ = ',';
    put(m);
    *p++ = '\n';
    buf.append(line, p - line);
}

inline std::vector<CsvRow> read_tabulation_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "k,delta,M")
        throw std::runtime_error("tabulation CSV: missing k,delta,M header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CsvRow row;
        const char* s = line.data();
        const char* e = s + line.size();
        auto take = [&](std::uint64_t& v) {
            auto res = std::from_chars(s, e, v);
            if (res.ec != std::errc()) throw std::runtime_error("tabulation CSV: bad integer");
            s = res.ptr;
        };
        take(row.k);
        if (s == e || *s++ != ',') throw std::runtime_error("tabulation CSV: bad row");
        take(row.delta);
        if (s == e || *s++ != ',') throw std::runtime_error("tabulation CSV: bad row");
        take(row.m);
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<CsvRow> read_tabulation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    return read_tabulation_csv(in);
}

}  // namespace multab
