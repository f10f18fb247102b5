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
#include "irsmec/solution.hpp"

#include <doctest.h>

#include <stdexcept>

using irsmec::SystemParams;

TEST_CASE("defaults validate")
{
    SystemParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.compute_time() == doctest::Approx(9e-3));
    CHECK(p.wet_time() == doctest::Approx(1e-3));
    CHECK(p.noise_floor() == doctest::Approx(2.48e-15));
}

TEST_CASE("invalid fields are rejected")
{
    auto bad = [](auto mutate) {
        SystemParams p;
        mutate(p);
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    };
    bad([](SystemParams& p) { p.tau = 0.0; });
    bad([](SystemParams& p) { p.tau = 1.0; });
    bad([](SystemParams& p) { p.K = 0; });
    bad([](SystemParams& p) { p.d1 = 5.0; });  // d1 + d2 != R
    bad([](SystemParams& p) { p.M = 3; });     // taps overflow the prefix
    bad([](SystemParams& p) { p.L_max = 1.0; });
    bad([](SystemParams& p) { p.L.pop_back(); });
    bad([](SystemParams& p) { p.sigma2 = -1.0; });
}

TEST_CASE("task draws stay in range and are reproducible")
{
    SystemParams p;
    auto a = irsmec::make_stream(9, irsmec::stream::tasks);
    auto b = irsmec::make_stream(9, irsmec::stream::tasks);
    SystemParams q = p;
    p.sample_tasks(a);
    q.sample_tasks(b);
    for (int k = 0; k < p.K; ++k) {
        CHECK(p.L[k] >= p.L_min);
        CHECK(p.L[k] <= p.L_max);
        CHECK(p.c[k] >= p.c_min);
        CHECK(p.c[k] <= p.c_max);
        CHECK(p.L[k] == q.L[k]);
        CHECK(p.c[k] == q.c[k]);
    }
}

TEST_CASE("streams differ by id and seed")
{
    auto a = irsmec::make_stream(1, 1);
    auto b = irsmec::make_stream(1, 2);
    auto c = irsmec::make_stream(2, 1);
    const auto x = a();
    CHECK(x != b());
    CHECK(x != c());
}

TEST_CASE("offload volume clamps at zero")
{
    SystemParams p;
    p.L = {1000.0, 20e3, 0.0};
    p.c = {450.0, 450.0, 450.0};
    Eigen::VectorXd f(3);
    f << 1e8, 0.0, 5e7;
    const Eigen::VectorXd ell = irsmec::offload_volume(p, f);
    CHECK(ell[0] == 0.0);
    CHECK(ell[1] == doctest::Approx(20e3));
    CHECK(ell[2] == 0.0);
    const Eigen::VectorXd r = irsmec::required_rates(p, ell);
    CHECK(r[1] == doctest::Approx(20e3 / 9e-3));
}

TEST_CASE("relative change guards the denominator")
{
    CHECK(irsmec::relative_change(1.0, 2.0) == doctest::Approx(1.0));
    CHECK(irsmec::relative_change(0.0, 0.0) == 0.0);
    CHECK(irsmec::relative_change(0.0, 1e-13) == doctest::Approx(0.1));
}
