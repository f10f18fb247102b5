// SPDX-License-Identifier: Apache-2.0
//
// irsmec - energy-minimizing resource allocation for IRS-aided
// wireless-powered mobile edge computing over OFDM
// Copyright (C) 2026 The irsmec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsmec/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace irsmec {

namespace {

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
T parse_field(std::string_view s, int line, const char* what)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("line " + std::to_string(line) + ": bad " + what + " '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos)
            return out;
        start = comma + 1;
    }
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
    os.close();
    if (!os)
        throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

std::string format_record(const RunRecord& r)
{
    const bool ok = r.status == RecordStatus::ok;
    std::string s = to_string(r.scheme);
    s += ',' + std::to_string(r.seed);
    s += ',' + r.param;
    s += ',' + num(r.value);
    s += ',' + num(ok ? r.total_J : NAN);
    s += ',' + num(ok ? r.wet_J : NAN);
    s += ',' + num(ok ? r.edge_J : NAN);
    s += ',' + std::to_string(r.iters);
    s += ',' + num(r.ms);
    return s;
}

std::string records_to_csv(const std::vector<RunRecord>& records)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += format_record(r);
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> parse_records_csv(const std::string& text)
{
    std::vector<RunRecord> out;
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (n == 1) {
            if (line != kCsvHeader)
                throw std::invalid_argument("line 1: unexpected header '" + line + "'");
            continue;
        }
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 9)
            throw std::invalid_argument("line " + std::to_string(n) + ": expected 9 fields, got " +
                                        std::to_string(f.size()));
        RunRecord r;
        try {
            r.scheme = parse_scheme(f[0]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(n) + ": " + e.what());
        }
        r.seed = parse_field<std::uint64_t>(f[1], n, "seed");
        r.param = std::string(f[2]);
        r.value = parse_field<double>(f[3], n, "value");
        r.total_J = parse_field<double>(f[4], n, "total_J");
        r.wet_J = parse_field<double>(f[5], n, "wet_J");
        r.edge_J = parse_field<double>(f[6], n, "edge_J");
        r.iters = parse_field<int>(f[7], n, "iters");
        r.ms = parse_field<double>(f[8], n, "ms");
        if (std::isnan(r.total_J))
            r.status = RecordStatus::infeasible;
        out.push_back(std::move(r));
    }
    if (n == 0)
        throw std::invalid_argument("line 1: missing header");
    return out;
}

std::string plot_table(const std::vector<RunRecord>& records, const std::string& param)
{
    std::vector<RunRecord> subset;
    for (const auto& r : records)
        if (r.param == param)
            subset.push_back(r);
    const auto rows = summarize(subset);

    std::set<int> schemes;
    std::vector<double> xs;
    for (const auto& row : rows) {
        schemes.insert(static_cast<int>(row.scheme));
        bool seen = false;
        for (double x : xs)
            seen = seen || x == row.value;
        if (!seen)
            xs.push_back(row.value);
    }

    std::string out = "x";
    for (int s : schemes) {
        const std::string name = to_string(static_cast<Scheme>(s));
        out += ',' + name + "_mean," + name + "_std";
    }
    out += '\n';
    for (double x : xs) {
        out += num(x);
        for (int s : schemes) {
            double mean = NAN;
            double sd = NAN;
            for (const auto& row : rows)
                if (static_cast<int>(row.scheme) == s && row.value == x) {
                    mean = row.mean;
                    sd = row.n_ok > 0 ? row.std : NAN;
                }
            out += ',' + num(mean) + ',' + num(sd);
        }
        out += '\n';
    }
    return out;
}

ReportFiles emit_report(const std::vector<RunRecord>& records, const std::string& dir)
{
    if (records.empty())
        throw std::invalid_argument("no records to report");
    const std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec)
        throw std::runtime_error("cannot create directory " + base.string() + ": " + ec.message());

    ReportFiles files;
    const auto csv = base / "records.csv";
    write_file(csv, records_to_csv(records));
    files.records = csv.string();

    std::vector<std::string> params;
    for (const auto& r : records) {
        bool seen = false;
        for (const auto& p : params)
            seen = seen || p == r.param;
        if (!seen)
            params.push_back(r.param);
    }
    for (const auto& p : params) {
        const auto path = base / ("plot_" + p + ".csv");
        write_file(path, plot_table(records, p));
        files.plots.push_back(path.string());
    }
    return files;
}

}  // namespace irsmec
