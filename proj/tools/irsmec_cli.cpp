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

// irsmec: Monte-Carlo runs and parameter sweeps from the command line.

#include "irsmec/irsmec.h"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace {

struct Failure {
    irsmec_status code;
};

void check(irsmec_status st)
{
    if (st != IRSMEC_OK && st != IRSMEC_ERR_INFEASIBLE) {
        std::fprintf(stderr, "irsmec: %s\n", irsmec_last_error());
        throw Failure{st};
    }
}

std::vector<double> parse_values(const std::string& list)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw CLI::ValidationError("--sweep", "bad value '" + item + "'");
        out.push_back(v);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

void print_summary(const irsmec_records* recs)
{
    struct Acc {
        int n = 0;
        int ok = 0;
        double sum = 0.0;
        double sumsq = 0.0;
    };
    std::vector<std::tuple<std::string, std::string, double>> order;
    std::map<std::tuple<std::string, std::string, double>, Acc> acc;
    const std::size_t n = irsmec_records_count(recs);
    for (std::size_t i = 0; i < n; ++i) {
        irsmec_record r;
        check(irsmec_records_get(recs, i, &r));
        const auto key = std::make_tuple(std::string(r.scheme), std::string(r.param), r.value);
        auto [it, inserted] = acc.try_emplace(key);
        if (inserted)
            order.push_back(key);
        ++it->second.n;
        if (r.status == IRSMEC_RECORD_OK) {
            ++it->second.ok;
            it->second.sum += r.total_j;
            it->second.sumsq += r.total_j * r.total_j;
        } else {
            std::fprintf(stderr, "irsmec: %s seed %llu: %s\n", r.scheme, static_cast<unsigned long long>(r.seed),
                         r.message);
        }
    }
    std::printf("%-12s %-9s %12s %14s %14s %7s\n", "scheme", "param", "value", "mean_J", "std_J", "ok/n");
    for (const auto& key : order) {
        const Acc& a = acc[key];
        const double mean = a.ok ? a.sum / a.ok : NAN;
        const double var = a.ok > 1 ? std::max(0.0, (a.sumsq - a.ok * mean * mean) / (a.ok - 1)) : 0.0;
        std::printf("%-12s %-9s %12.6g %14.6e %14.6e %3d/%-3d\n", std::get<0>(key).c_str(), std::get<1>(key).c_str(),
                    std::get<2>(key), mean, std::sqrt(var), a.ok, a.n);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Energy minimization for IRS-aided wireless-powered mobile edge computing"};
    std::string config;
    std::string scheme = "with-irs";
    int trials = 20;
    std::uint64_t seed = 1;
    std::string sweep;
    double tau = 0.0;
    std::string out = "out";
    int threads = 0;
    std::vector<std::string> sets;

    app.add_option("--config", config, "key=value parameter file")->check(CLI::ExistingFile);
    app.add_option("--scheme", scheme, "with-irs, rand-phase, without-irs, a comma list, or all")
        ->capture_default_str();
    app.add_option("--trials", trials, "Monte-Carlo trials per point")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base seed; trial i uses seed + i")->capture_default_str();
    app.add_option("--sweep", sweep, "NAME=v1,v2,... with NAME in N, d1, beta, vartheta, tau");
    auto* tau_opt = app.add_option("--tau", tau, "time fraction of the energy transfer phase");
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    app.add_option("--set", sets, "extra parameter override KEY=VALUE (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (scheme == "all")
        scheme = "with-irs,rand-phase,without-irs";

    irsmec_params* params = nullptr;
    irsmec_records* recs = nullptr;
    int exit_code = 0;
    try {
        check(irsmec_params_create(&params));
        if (!config.empty())
            check(irsmec_params_load_file(params, config.c_str()));
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "irsmec: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
                throw Failure{IRSMEC_ERR_INVALID_ARGUMENT};
            }
            check(irsmec_params_set(params, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
        }
        if (*tau_opt) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", tau);
            check(irsmec_params_set(params, "tau", buf));
        }

        irsmec_status st;
        if (sweep.empty()) {
            st = irsmec_run_scheme(params, scheme.c_str(), trials, seed, threads, &recs);
        } else {
            const auto eq = sweep.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "irsmec: --sweep expects NAME=v1,v2,...\n");
                throw Failure{IRSMEC_ERR_INVALID_ARGUMENT};
            }
            const auto values = parse_values(sweep.substr(eq + 1));
            st = irsmec_sweep(params, scheme.c_str(), sweep.substr(0, eq).c_str(), values.data(), values.size(),
                              trials, seed, threads, &recs);
        }
        check(st);
        print_summary(recs);
        check(irsmec_write_report(recs, out.c_str()));
        std::printf("records written to %s/records.csv\n", out.c_str());
        exit_code = st == IRSMEC_ERR_INFEASIBLE ? 2 : 0;
    } catch (const Failure&) {
        exit_code = 1;
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "irsmec: %s\n", e.what());
        exit_code = 1;
    }
    irsmec_records_destroy(recs);
    irsmec_params_destroy(params);
    return exit_code;
}
