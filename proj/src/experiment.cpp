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

#include "irsmec/experiment.hpp"

#include "irsmec/channel.hpp"
#include "irsmec/log.hpp"
#include "irsmec/wet.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace irsmec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Job {
    SystemParams params;
    Scheme scheme;
    std::uint64_t seed;
    std::string param;
    double value;
};

std::vector<RunRecord> run_jobs(const std::vector<Job>& jobs, int threads)
{
    std::vector<RunRecord> out(jobs.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(jobs.size(), threads > 0 ? static_cast<std::size_t>(threads) : hw);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& j = jobs[i];
            out[i] = run_trial(j.params, j.scheme, j.seed);
            out[i].param = j.param;
            out[i].value = j.value;
        }
    };
    if (workers <= 1) {
        work();
        return out;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(work);
    pool.clear();  // joins
    return out;
}

std::vector<Job> jobs_for(const ExperimentConfig& config, const SystemParams& params, const std::string& param,
                          double value)
{
    std::vector<Job> jobs;
    for (Scheme s : config.schemes)
        for (int t = 0; t < config.trials; ++t)
            jobs.push_back({params, s, config.seed + static_cast<std::uint64_t>(t), param, value});
    return jobs;
}

}  // namespace

void ExperimentConfig::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (schemes.empty())
        throw std::invalid_argument("no scheme selected");
    if (sweep) {
        if (!is_sweep_parameter(sweep->name))
            throw std::invalid_argument("cannot sweep '" + sweep->name + "' (expected N, d1, beta, vartheta or tau)");
        if (sweep->values.empty())
            throw std::invalid_argument("sweep over " + sweep->name + " has no values");
        for (double v : sweep->values)
            with_sweep_value(params, sweep->name, v).validate();
    }
    params.validate();
}

bool is_sweep_parameter(std::string_view name)
{
    return name == "N" || name == "d1" || name == "beta" || name == "vartheta" || name == "tau";
}

SystemParams with_sweep_value(const SystemParams& params, std::string_view name, double value)
{
    SystemParams p = params;
    if (name == "N") {
        if (!(value >= 0.0) || value != std::floor(value))
            throw std::invalid_argument("N must be a non-negative integer");
        p.N = static_cast<int>(value);
    } else if (name == "d1") {
        p.d1 = value;
        p.d2 = p.R - value;
    } else if (name == "beta") {
        p.beta_ui = value;
        p.beta_ia = value;
    } else if (name == "vartheta") {
        p.vartheta = value;
    } else if (name == "tau") {
        p.tau = value;
    } else {
        throw std::invalid_argument("cannot sweep '" + std::string(name) + "'");
    }
    return p;
}

RunRecord run_trial(const SystemParams& params_in, Scheme scheme, std::uint64_t trial_seed)
{
    RunRecord rec;
    rec.scheme = scheme;
    rec.seed = trial_seed;
    rec.param = "tau";
    rec.value = params_in.tau;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        SystemParams params = params_in;
        if (!params.fixed_tasks) {
            auto rng = make_stream(trial_seed, stream::tasks);
            params.sample_tasks(rng);
        }
        auto geo_rng = make_stream(trial_seed, stream::geometry);
        const Geometry geo = sample_geometry(params, geo_rng);
        const ChannelSet ch = build_channels(params, geo, trial_seed);
        const JointSolution sol = optimize_joint(ch, params, trial_seed, scheme);
        const ConstraintReport audit = check_constraints(ch, sol, params);
        if (!audit.ok()) {
            rec.status = RecordStatus::error;
            rec.message = "constraint audit failed: " + audit.violations.front();
        }
        rec.total_J = sol.total_energy;
        rec.wet_J = sol.wet_energy;
        rec.edge_J = sol.edge_energy;
        rec.iters = sol.iterations;
    } catch (const InfeasibleError& e) {
        rec.status = RecordStatus::infeasible;
        rec.message = e.what();
    } catch (const std::exception& e) {
        rec.status = RecordStatus::error;
        rec.message = e.what();
    }
    if (rec.status != RecordStatus::ok) {
        rec.total_J = rec.wet_J = rec.edge_J = kNaN;
        log::warn("trial " + std::to_string(trial_seed) + " (" + to_string(scheme) + "): " + rec.message);
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<RunRecord> run_scheme(const ExperimentConfig& config)
{
    ExperimentConfig c = config;
    c.sweep.reset();
    c.validate();
    return run_jobs(jobs_for(c, c.params, "tau", c.params.tau), c.threads);
}

std::vector<RunRecord> sweep_parameter(const ExperimentConfig& config)
{
    if (!config.sweep)
        throw std::invalid_argument("no sweep configured");
    config.validate();
    std::vector<Job> jobs;
    for (double v : config.sweep->values) {
        auto part = jobs_for(config, with_sweep_value(config.params, config.sweep->name, v), config.sweep->name, v);
        jobs.insert(jobs.end(), part.begin(), part.end());
    }
    return run_jobs(jobs, config.threads);
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records)
{
    using Key = std::tuple<int, std::string, double>;
    std::map<Key, std::size_t> index;
    std::vector<SummaryRow> rows;
    std::vector<std::vector<double>> samples;
    for (const auto& r : records) {
        const Key key{static_cast<int>(r.scheme), r.param, r.value};
        auto [it, inserted] = index.try_emplace(key, rows.size());
        if (inserted) {
            SummaryRow row;
            row.scheme = r.scheme;
            row.param = r.param;
            row.value = r.value;
            rows.push_back(row);
            samples.emplace_back();
        }
        SummaryRow& row = rows[it->second];
        ++row.n;
        if (r.status == RecordStatus::ok) {
            ++row.n_ok;
            samples[it->second].push_back(r.total_J);
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& s = samples[i];
        if (s.empty()) {
            rows[i].mean = kNaN;
            continue;
        }
        double mean = 0.0;
        for (double x : s)
            mean += x;
        mean /= static_cast<double>(s.size());
        double var = 0.0;
        for (double x : s)
            var += (x - mean) * (x - mean);
        rows[i].mean = mean;
        rows[i].std = s.size() > 1 ? std::sqrt(var / static_cast<double>(s.size() - 1)) : 0.0;
    }
    return rows;
}

}  // namespace irsmec
