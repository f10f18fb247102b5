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

#include "irsmec/solution.hpp"

#include <algorithm>
#include <cmath>

namespace irsmec {

ComputeSolution ComputeSolution::empty(int K, int M, int N)
{
    ComputeSolution s;
    s.alpha = Eigen::MatrixXi::Zero(K, M);
    s.p = Eigen::MatrixXd::Zero(K, M);
    s.f = Eigen::VectorXd::Zero(K);
    s.zeta = Eigen::VectorXd::Zero(K);
    s.ell = Eigen::VectorXd::Zero(K);
    s.theta = IrsVector::zeros(N);
    return s;
}

Eigen::VectorXd offload_volume(const SystemParams& params, const Eigen::VectorXd& f)
{
    Eigen::VectorXd ell(params.K);
    const double t = params.compute_time();
    for (int k = 0; k < params.K; ++k)
        ell[k] = std::max(0.0, params.L[k] - t * f[k] / params.c[k]);
    return ell;
}

Eigen::VectorXd required_rates(const SystemParams& params, const Eigen::VectorXd& ell)
{
    return ell / params.compute_time();
}

double relative_change(double current, double previous)
{
    return std::abs(current - previous) / std::max(std::abs(current), 1e-12);
}

}  // namespace irsmec
