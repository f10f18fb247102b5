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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace irsmec {

// All quantities in SI units: W, J, s, Hz, bit, m. Table-style inputs in mW
// or Kbit are converted by the config parser.
struct SystemParams {
    // System model
    int K = 3;    // devices
    int M = 16;   // OFDM sub-bands
    int N = 30;   // IRS elements
    double T = 10e-3;
    double tau = 0.1;

    double R = 12.0;   // coverage radius; the IRS sits at the cell edge
    double d1 = 11.0;  // HAP to device-circle center
    double d2 = 1.0;   // device-circle center to IRS
    double r = 1.0;    // device-circle radius

    // Energy transfer
    double eta = 0.5;

    // Communication model
    double B = 312.5e3;
    double PL0_dB = 30.0;
    double d0 = 1.0;
    double beta_ua = 3.5;
    double beta_ui = 2.2;
    double beta_ia = 2.2;
    int Ld = 4;   // direct-link taps
    int L1 = 2;   // IRS-HAP taps
    int L2 = 3;   // device-IRS taps
    double sigma2 = 1.24e-15;
    double Gamma = 2.0;

    // Computing model
    double L_min = 15e3;
    double L_max = 20e3;
    double c_min = 400.0;
    double c_max = 500.0;
    double f_max = 1e8;
    double kappa = 1e-28;
    double vartheta = 5e-8;
    double f_e = 1e9;
    double p_c = 1e-7;

    // Per-device task size [bit] and cycles per bit; drawn per trial from
    // [L_min, L_max] and [c_min, c_max].
    std::vector<double> L = std::vector<double>(3, 17.5e3);
    std::vector<double> c = std::vector<double>(3, 450.0);
    // When set, L and c are kept as given instead of being drawn per trial.
    bool fixed_tasks = false;

    // Loop control
    double eps = 1e-3;
    int t_max = 50;        // SCA and inner AO loops
    int outer_t_max = 20;  // WET/computing alternation
    int dual_t_max = 200;  // subgradient iterations in the dual loop
    double delta_lambda1 = 0.1;
    double delta_mu1 = 0.1;
    double lambda_min = 1e-9;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    // Resizes the per-device vectors to K, filling with range midpoints.
    void reset_tasks_to_midpoint();

    // Draws L and c uniformly from their ranges.
    void sample_tasks(std::mt19937_64& rng);

    double compute_time() const { return (1.0 - tau) * T; }
    double wet_time() const { return tau * T; }
    double noise_floor() const { return Gamma * sigma2; }
};

// Deterministic sub-stream derived from an experiment seed. Streams are
// addressed by fixed offsets so adding devices or elements never perturbs
// the draws of existing ones.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_id);

namespace stream {
inline constexpr std::uint64_t geometry = 1;
inline constexpr std::uint64_t tasks = 2;
inline constexpr std::uint64_t init = 3;
inline constexpr std::uint64_t random_phase = 4;
inline constexpr std::uint64_t direct_base = 1000;
inline constexpr std::uint64_t irs_hap_base = 100000;
inline constexpr std::uint64_t device_irs_base = 1000000;
inline constexpr std::uint64_t device_irs_stride = 100000;
}  // namespace stream

}  // namespace irsmec
