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

#include <Eigen/Dense>

#include <vector>

namespace irsmec {

// Lagrange multipliers of the energy (lambda) and rate (mu) constraints.
struct DualState {
    Eigen::VectorXd lambda;
    Eigen::VectorXd mu;
    double delta_lambda1 = 0.1;
    double delta_mu1 = 0.1;
    int t = 1;
};

// [mu B / (lambda ln 2) - Gamma sigma^2 / gain]^+, lambda floored at
// lambda_min; zero for a zero gain.
double waterfill_power(double lambda, double mu, double gain, const SystemParams& params);

// Per-band score -lambda (p + p_c) + mu B log2(1 + p gain / (Gamma sigma^2))
// at the water-filling power.
double band_score(double lambda, double mu, double gain, const SystemParams& params);

struct Assignment {
    int k = 0;
    double p = 0.0;
    double score = 0.0;
};

// Highest-scoring device for sub-band m (ties go to the lowest index).
// `gains` holds |C_km|^2 for every device.
Assignment assign_subband(int m, const DualState& dual, const Eigen::VectorXd& gains, const SystemParams& params);

// E_k / ((1 - tau) T) - kappa f_k^2 - sum_m alpha_km (p_km + p_c).
double slack_zeta(double E_k, double f_k, const Eigen::RowVectorXi& alpha_row, const Eigen::RowVectorXd& p_row,
                  const SystemParams& params);

// sum_m alpha_km B log2(1 + p_km |C_km(theta)|^2 / (Gamma sigma^2)) [bit/s].
double offload_rate(const ChannelSet& ch, const IrsVector& theta, const Eigen::RowVectorXi& alpha_row,
                    const Eigen::RowVectorXd& p_row, int k, const SystemParams& params);

Eigen::VectorXd offload_rates(const ChannelSet& ch, const ComputeSolution& s, const SystemParams& params);

struct Subgradients {
    Eigen::VectorXd s_lambda;  // usage - budget [W]
    Eigen::VectorXd s_mu;      // required rate - achieved rate [bit/s]
};

// Uses s.alpha, s.p, s.f and s.theta; E holds harvested energies [J].
Subgradients subgradients(const ComputeSolution& s, const Eigen::VectorXd& E, const ChannelSet& ch,
                          const SystemParams& params);

// Lagrangian of the allocation problem at (zeta, p, lambda, mu), with the
// association taken from s.alpha.
double lagrangian(const ComputeSolution& s, const Eigen::VectorXd& E, const DualState& dual, const ChannelSet& ch,
                  const SystemParams& params);

// Minimum-power water-filling meeting `rate` [bit/s] over the given gains.
// Bands that end with zero power get zero. Returns an empty vector when the
// gains are all zero and rate > 0.
Eigen::VectorXd min_power_waterfill(const Eigen::VectorXd& gains, double rate, const SystemParams& params);

enum class DualStatus { ok, energy_infeasible, rate_infeasible };

struct DualResult {
    Eigen::MatrixXi alpha;
    Eigen::MatrixXd p;
    Eigen::VectorXd zeta;
    DualStatus status = DualStatus::rate_infeasible;
    DualState dual;
    std::vector<double> lagrangian;  // one value per dual iteration
    int iterations = 0;
};

// Projected-subgradient dual decomposition for the association and power
// allocation at fixed theta and f. Each iterate's association is completed by
// per-device minimum-power water-filling; the best iterate that meets every
// rate and energy constraint is returned.
DualResult dual_loop(const ChannelSet& ch, const IrsVector& theta, const Eigen::VectorXd& f, const Eigen::VectorXd& E,
                     const SystemParams& params, const DualState* dual0 = nullptr);

// SCA design of the offloading IRS vector with alpha, p and f fixed: maximizes
// the summed rate slack. Trace values are in bit/s.
ScaResult sca_theta_i(const ChannelSet& ch, const Eigen::MatrixXi& alpha, const Eigen::MatrixXd& p,
                      const Eigen::VectorXd& f, const IrsVector& theta_init, const SystemParams& params);

// Largest CPU frequencies that fit the energy budget left after offloading
// and the slack zeta, clipped to [0, f_max].
Eigen::VectorXd update_frequencies(const Eigen::VectorXd& E, const Eigen::MatrixXi& alpha, const Eigen::MatrixXd& p,
                                   const Eigen::VectorXd& zeta, const SystemParams& params);

struct ComputingResult {
    ComputeSolution solution;
    std::vector<double> trace;        // edge energy theta sum(ell) [J] per iteration
    std::vector<ScaResult> sca_runs;  // one per theta^I design
    std::vector<DualResult> dual_runs;
};

// Alternates theta^I design, dual allocation and frequency update starting
// from `current`, which must satisfy every constraint under `wet`. A
// candidate allocation replaces the incumbent only when it keeps every
// energy budget at the current frequencies and enlarges the summed slack.
ComputingResult optimize_computing(const ChannelSet& ch, const WetSolution& wet, const ComputeSolution& current,
                                   const SystemParams& params, bool skip_sca = false);

}  // namespace irsmec
