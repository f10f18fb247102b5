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

#include "irsmec/channel.hpp"
#include "irsmec/params.hpp"
#include "irsmec/solution.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace irsmec {

enum class Scheme { with_irs, rand_phase, without_irs };

// "with-irs", "rand-phase", "without-irs".
const char* to_string(Scheme scheme);
// Throws std::invalid_argument for other names.
Scheme parse_scheme(std::string_view name);

struct JointSolution {
    WetSolution wet;
    ComputeSolution compute;
    double total_energy = 0.0;  // [J]
    std::vector<double> trace;  // total energy after init and every outer iteration
    int iterations = 0;         // outer iterations run
    int init_attempts = 0;

    // Inner traces kept for auditing: one WET trace per optimize_wet call and
    // one computing trace per optimize_computing call.
    std::vector<std::vector<double>> wet_traces;
    std::vector<std::vector<double>> compute_traces;
    std::vector<std::vector<double>> sca_traces;

    double wet_energy = 0.0;   // tau T sum(p^E)
    double edge_energy = 0.0;  // vartheta sum(ell)
};

// Random feasible start for the computing phase: f uniform on [0, f_max],
// theta^I with uniform amplitude and phase (or `theta_i` when given), one
// greedily reserved sub-band per device carrying the power that meets its
// rate exactly. Throws std::invalid_argument when K > M.
ComputeSolution init_computing(const ChannelSet& ch, const SystemParams& params, std::mt19937_64& rng,
                               const IrsVector* theta_i = nullptr);

// Alternating WET / computing optimization. For without_irs the reflected
// path of `ch` is dropped; rand_phase fixes both IRS vectors to random unit
// amplitude draws and skips both SCA steps. Initialization is re-drawn up to
// five times when the first WET design fails. Throws InfeasibleError.
JointSolution optimize_joint(const ChannelSet& ch, const SystemParams& params, std::uint64_t seed,
                             Scheme scheme = Scheme::with_irs);

// tau T sum(p^E) + vartheta sum_k max(0, L_k - (1 - tau) T f_k / c_k).
double total_energy(const JointSolution& sol, const SystemParams& params);
double total_energy(const WetSolution& wet, const ComputeSolution& compute, const SystemParams& params);

struct TauPoint {
    double tau = 0.0;
    bool ok = false;
    double energy = 0.0;
    std::string message;
};

// optimize_joint at each tau with the same seed; infeasible points are kept
// with ok = false.
std::vector<TauPoint> sweep_tau(const ChannelSet& ch, const std::vector<double>& grid, const SystemParams& params,
                                std::uint64_t seed, Scheme scheme = Scheme::with_irs);

struct ConstraintReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Re-checks every constraint of the joint problem from the raw fields.
// Rates and energy budgets use relative tolerance `rel_tol`, bounds and
// exclusivity `abs_tol`.
ConstraintReport check_constraints(const ChannelSet& ch, const JointSolution& sol, const SystemParams& params,
                                   double rel_tol = 1e-6, double abs_tol = 1e-9);

}  // namespace irsmec
