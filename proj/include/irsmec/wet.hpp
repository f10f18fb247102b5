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

#include <stdexcept>

namespace irsmec {

// Raised when no WET power allocation can cover the devices' demand.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// kappa f_k^2 + sum_m alpha_km (p_km + p_c) [W].
double required_device_power(int k, const ComputeSolution& compute, const SystemParams& params);

// sum_m eta tau T p_m |C_km(theta)|^2 [J].
double harvested_energy(const ChannelSet& ch, double tau, const Eigen::VectorXd& p_e, const IrsVector& theta_e, int k,
                        const SystemParams& params);

// Minimum-sum WET powers covering every device's demand (linear program).
// Throws InfeasibleError when a device with positive demand sees an all-zero
// channel or the LP fails.
Eigen::VectorXd solve_wet_power(const ChannelSet& ch, const IrsVector& theta_e, const ComputeSolution& compute,
                                const SystemParams& params);

// Successive convex approximation of the WET reflection vector: maximizes the
// summed harvested-power slack with p_e fixed. The trace holds the slack sum
// [W] at the start point and after every accepted subproblem.
ScaResult sca_theta_e(const ChannelSet& ch, const Eigen::VectorXd& p_e, const ComputeSolution& compute,
                      const IrsVector& theta_init, const SystemParams& params);

// Alternates the LP and the SCA step from theta_init. With skip_sca only the
// LP runs (random-phase and no-IRS benchmarks). When an incumbent is given it
// is returned instead of any result that is worse.
WetSolution optimize_wet(const ChannelSet& ch, const ComputeSolution& compute, const IrsVector& theta_init,
                         const SystemParams& params, bool skip_sca = false, const WetSolution* incumbent = nullptr);

}  // namespace irsmec
