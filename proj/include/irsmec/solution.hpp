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

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace irsmec {

// Computing-phase decision: association, offload powers, CPU frequencies and
// the IRS vector used while offloading.
struct ComputeSolution {
    Eigen::MatrixXi alpha;   // K x M, 0/1
    Eigen::MatrixXd p;       // K x M [W]
    Eigen::VectorXd f;       // K [cycle/s]
    Eigen::VectorXd zeta;    // K energy slack [W]
    Eigen::VectorXd ell;     // K offloaded bits
    IrsVector theta;

    // All-zero allocation for K devices and M sub-bands.
    static ComputeSolution empty(int K, int M, int N);
};

// WET-phase decision.
struct WetSolution {
    Eigen::VectorXd p;       // M [W]
    IrsVector theta;
    double objective = 0.0;  // tau T sum(p) [J]
    std::vector<double> trace;  // objective after each LP solve
};

// Per-iteration record of an SCA run: objective (sum of slacks) after each
// accepted subproblem, the first entry being the value at the start point.
struct ScaResult {
    IrsVector theta;
    std::vector<double> trace;
    bool solver_ok = true;
};

// max(0, L_k - (1 - tau) T f_k / c_k) for every device.
Eigen::VectorXd offload_volume(const SystemParams& params, const Eigen::VectorXd& f);

// ell_k / ((1 - tau) T) [bit/s].
Eigen::VectorXd required_rates(const SystemParams& params, const Eigen::VectorXd& ell);

// Relative change |a - b| / max(|a|, 1e-12).
double relative_change(double current, double previous);

}  // namespace irsmec
