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

// Internal helpers shared by the two SCA designs. The IRS vector enters the
// cone programs as 2N real variables laid out [Re(theta); Im(theta)].

#include "irsmec/channel.hpp"
#include "irsmec/solver.hpp"

#include <Eigen/Dense>

namespace irsmec::detail {

// First-order model of |C_km(theta)|^2 around the CFR value c0 = C_km(theta0):
//   y(theta) = 2 Re{conj(c0) C_km(theta)} - |c0|^2 = constant + grad . [x; z]
// which is exact at theta0 and a global lower bound.
struct LinearModel {
    double constant = 0.0;
    Eigen::RowVectorXd grad;  // length 2N
};

inline LinearModel linearize(const ChannelSet& ch, int k, int m, cplx c0)
{
    const int N = ch.N();
    LinearModel lm;
    lm.constant = 2.0 * std::real(std::conj(c0) * ch.direct_cfr(k)[m]) - std::norm(c0);
    lm.grad.resize(2 * N);
    for (int n = 0; n < N; ++n) {
        const cplx w = std::conj(c0) * ch.cascaded_cfr(k)(m, n);
        lm.grad[n] = 2.0 * w.real();
        lm.grad[N + n] = -2.0 * w.imag();
    }
    return lm;
}

// |theta_n| <= 1 for every element, as N three-dimensional cones.
inline void add_unit_disk_constraints(solver::ConeProblem& prob, int N)
{
    const int nv = prob.num_vars();
    for (int n = 0; n < N; ++n) {
        solver::SocBlock blk;
        blk.A = Eigen::MatrixXd::Zero(2, nv);
        blk.A(0, n) = 1.0;
        blk.A(1, N + n) = 1.0;
        blk.b = Eigen::VectorXd::Zero(2);
        blk.c = Eigen::VectorXd::Zero(nv);
        blk.d = 1.0;
        prob.add_soc(std::move(blk));
    }
}

inline IrsVector theta_from(const Eigen::VectorXd& x, int N)
{
    Eigen::VectorXcd v(N);
    for (int n = 0; n < N; ++n)
        v[n] = {x[n], x[N + n]};
    return IrsVector::projected(std::move(v));
}

}  // namespace irsmec::detail
