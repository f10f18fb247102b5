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

#include "irsmec/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irsmec {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument("invalid parameter: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void SystemParams::validate() const
{
    require(K >= 1, "K must be >= 1");
    require(M >= 1, "M must be >= 1");
    require(N >= 0, "N must be >= 0");
    require(positive(T), "T must be > 0");
    require(tau > 0.0 && tau < 1.0, "tau must lie in (0,1)");
    require(r >= 0.0 && std::isfinite(r), "r must be >= 0");
    require(positive(R), "R must be > 0");
    require(d1 >= 0.0 && d2 >= 0.0, "d1, d2 must be >= 0");
    require(std::abs(d1 + d2 - R) <= 1e-9 * std::max(1.0, R), "d1 + d2 must equal R (IRS at the cell edge)");
    require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0,1]");
    require(positive(B), "B must be > 0");
    require(std::isfinite(PL0_dB), "PL0 must be finite");
    require(positive(d0), "d0 must be > 0");
    require(positive(beta_ua) && positive(beta_ui) && positive(beta_ia), "path-loss exponents must be > 0");
    require(Ld >= 1 && L1 >= 1 && L2 >= 1, "tap counts must be >= 1");
    require(std::max(Ld, L1 + L2 - 1) <= M, "delay spread exceeds the cyclic prefix (max(Ld, L1+L2-1) > M)");
    require(positive(sigma2), "sigma2 must be > 0");
    require(positive(Gamma), "Gamma must be > 0");
    require(positive(L_min) && L_max >= L_min, "task size range must satisfy 0 < L_min <= L_max");
    require(positive(c_min) && c_max >= c_min, "cycle range must satisfy 0 < c_min <= c_max");
    require(positive(f_max), "f_max must be > 0");
    require(positive(kappa), "kappa must be > 0");
    require(vartheta >= 0.0 && std::isfinite(vartheta), "vartheta must be >= 0");
    require(p_c >= 0.0 && std::isfinite(p_c), "p_c must be >= 0");
    require(static_cast<int>(L.size()) == K && static_cast<int>(c.size()) == K, "per-device L and c must have K entries");
    for (int k = 0; k < K; ++k) {
        require(L[k] >= 0.0 && std::isfinite(L[k]), "L_k must be >= 0");
        require(positive(c[k]), "c_k must be > 0");
    }
    require(positive(eps), "eps must be > 0");
    require(t_max >= 1 && outer_t_max >= 1 && dual_t_max >= 1, "iteration caps must be >= 1");
    require(positive(delta_lambda1) && positive(delta_mu1), "subgradient steps must be > 0");
    require(positive(lambda_min), "lambda_min must be > 0");
}

void SystemParams::reset_tasks_to_midpoint()
{
    L.assign(static_cast<std::size_t>(std::max(K, 0)), 0.5 * (L_min + L_max));
    c.assign(static_cast<std::size_t>(std::max(K, 0)), 0.5 * (c_min + c_max));
}

void SystemParams::sample_tasks(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    L.resize(static_cast<std::size_t>(K));
    c.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        L[k] = L_min + (L_max - L_min) * unit(rng);
        c[k] = c_min + (c_max - c_min) * unit(rng);
    }
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace irsmec
