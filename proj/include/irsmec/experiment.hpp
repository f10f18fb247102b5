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

#pragma once

#include "irsmec/orchestrator.hpp"
#include "irsmec/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irsmec {

struct Sweep {
    std::string name;  // N, d1, beta, vartheta or tau
    std::vector<double> values;
};

struct ExperimentConfig {
    SystemParams params;
    std::vector<Scheme> schemes{Scheme::with_irs};
    int trials = 20;
    std::uint64_t seed = 1;
    std::optional<Sweep> sweep;
    std::string out_dir = "out";
    int threads = 0;  // 0: hardware concurrency

    // Throws std::invalid_argument.
    void validate() const;
};

enum class RecordStatus { ok, infeasible, error };

struct RunRecord {
    Scheme scheme = Scheme::with_irs;
    std::uint64_t seed = 0;  // trial seed
    std::string param;       // swept parameter, "tau" when nothing is swept
    double value = 0.0;
    double total_J = 0.0;
    double wet_J = 0.0;
    double edge_J = 0.0;
    int iters = 0;
    double ms = 0.0;
    RecordStatus status = RecordStatus::ok;
    std::string message;
};

// True for the names accepted in Sweep::name.
bool is_sweep_parameter(std::string_view name);

// Copy of `params` with the swept parameter set. d1 also moves d2 so the IRS
// stays at the cell edge; beta sets both IRS path-loss exponents.
SystemParams with_sweep_value(const SystemParams& params, std::string_view name, double value);

// Draws the trial's tasks (unless pinned), geometry and channels from
// `trial_seed` and runs one scheme. Never throws for infeasible instances;
// the status says what happened.
RunRecord run_trial(const SystemParams& params, Scheme scheme, std::uint64_t trial_seed);

// Every (scheme, trial) at the configured parameters; trial i uses seed + i
// for every scheme. Records are ordered by scheme, then trial.
std::vector<RunRecord> run_scheme(const ExperimentConfig& config);

// run_scheme at every sweep value. Throws std::invalid_argument when the
// config has no sweep or an empty value list.
std::vector<RunRecord> sweep_parameter(const ExperimentConfig& config);

struct SummaryRow {
    Scheme scheme = Scheme::with_irs;
    std::string param;
    double value = 0.0;
    int n_ok = 0;
    int n = 0;
    double mean = 0.0;  // NaN when n_ok = 0
    double std = 0.0;   // sample standard deviation, 0 for a single record
};

// Mean and sample std of total_J per (scheme, param, value) over ok records,
// in order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

}  // namespace irsmec
