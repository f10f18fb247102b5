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

#include "irsmec/channel.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace irsmec;

namespace {

IrsVector random_theta(int n, std::mt19937_64& rng) { return IrsVector::random(n, rng, false); }

}  // namespace

TEST_CASE("path loss at hand-evaluated distances")
{
    SystemParams p;
    CHECK(path_loss_gain(1.0, 2.2, p) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(path_loss_gain(10.0, 2.2, p) == doctest::Approx(std::pow(10.0, -5.2)).epsilon(1e-12));
    CHECK(path_loss_gain(10.0, 3.5, p) == doctest::Approx(std::pow(10.0, -6.5)).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss_gain(0.5, 2.2, p), std::domain_error);
}

TEST_CASE("tap power splits the path-loss gain")
{
    auto rng = make_stream(5, 77);
    const int draws = 100000;
    Eigen::VectorXd power = Eigen::VectorXd::Zero(4);
    for (int i = 0; i < draws; ++i)
        power += sample_cir(4, 0.01, rng).cwiseAbs2();
    power /= draws;
    CHECK(power.sum() == doctest::Approx(0.01).epsilon(0.01));
    for (int l = 0; l < 4; ++l)
        CHECK(power[l] == doctest::Approx(0.0025).epsilon(0.03));
    CHECK_THROWS_AS(sample_cir(2, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_cir(0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("reflection composition is a zero-padded convolution")
{
    using V = Eigen::VectorXcd;
    V one(1);
    one << 1.0;
    V a = compose_reflection(one, one, 4);
    CHECK(a == (V(4) << 1.0, 0.0, 0.0, 0.0).finished());
    V two(2);
    two << 1.0, 1.0;
    CHECK(compose_reflection(two, two, 4) == (V(4) << 1.0, 2.0, 1.0, 0.0).finished());
    V j(1);
    j << cplx(0.0, 1.0);
    V g(1);
    g << 2.0;
    CHECK(compose_reflection(j, g, 2) == (V(2) << cplx(0.0, 2.0), 0.0).finished());
    CHECK_THROWS_AS(compose_reflection(V::Ones(3), V::Ones(3), 4), std::length_error);
}

TEST_CASE("DFT rows and unit impulse")
{
    const Eigen::MatrixXcd F = dft_matrix(8);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(8);
    x[3] = cplx(0.5, -1.0);
    x[5] = 2.0;
    CHECK((F * x - oracle::dft(x)).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(4);
    h[0] = 1.0;
    ChannelSet ch({h}, {Eigen::MatrixXcd(4, 0)});
    for (int m = 0; m < 4; ++m)
        CHECK(std::abs(ch.cfr(0, m, IrsVector::zeros(0)) - cplx(1.0)) < 1e-15);
}

TEST_CASE("CFR matches a brute-force DFT of the composite channel")
{
    SystemParams p;
    p.N = 6;
    auto rng = make_stream(3, 99);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ChannelSet ch = oracle::make_channels(p, seed);
        const IrsVector th = random_theta(p.N, rng);
        for (int k = 0; k < p.K; ++k) {
            const Eigen::VectorXcd ref = oracle::dft(oracle::composite_cir(ch, k, th));
            const Eigen::VectorXcd got = ch.cfr_row(k, th);
            CHECK((got - ref).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + ref.cwiseAbs().maxCoeff()));
            for (int m = 0; m < p.M; ++m)
                CHECK(std::norm(ch.cfr(k, m, th)) == doctest::Approx(ch.gains(th)(k, m)).epsilon(1e-12));
        }
        // zero reflection leaves the direct link exactly
        const IrsVector zero = IrsVector::zeros(p.N);
        for (int k = 0; k < p.K; ++k)
            CHECK(ch.cfr_row(k, zero) == ch.direct_cfr(k));
    }
}

TEST_CASE("without_reflection drops the IRS path")
{
    SystemParams p;
    const ChannelSet ch = oracle::make_channels(p, 4);
    const ChannelSet bare = ch.without_reflection();
    CHECK(bare.N() == 0);
    CHECK(bare.K() == ch.K());
    for (int k = 0; k < p.K; ++k)
        CHECK(bare.cfr_row(k, IrsVector::zeros(0)) == ch.direct_cfr(k));
}

TEST_CASE("N = 0 build and determinism")
{
    SystemParams p;
    p.N = 0;
    const ChannelSet a = oracle::make_channels(p, 11);
    CHECK(a.N() == 0);
    CHECK(a.reflection(0).cols() == 0);
    SystemParams q;
    const ChannelSet b = oracle::make_channels(q, 11);
    const ChannelSet c = oracle::make_channels(q, 11);
    for (int k = 0; k < q.K; ++k) {
        CHECK(b.direct_cir(k) == c.direct_cir(k));
        CHECK(b.reflection(k) == c.reflection(k));
        // direct draws do not depend on N
        CHECK(a.direct_cir(k) == b.direct_cir(k));
    }
}

TEST_CASE("zero padding beyond the delay spread")
{
    SystemParams p;
    const ChannelSet ch = oracle::make_channels(p, 8);
    for (int k = 0; k < p.K; ++k) {
        CHECK(ch.direct_cir(k).tail(p.M - p.Ld).cwiseAbs().maxCoeff() == 0.0);
        CHECK(ch.reflection(k).bottomRows(p.M - (p.L1 + p.L2 - 1)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("mean direct gain follows the path loss")
{
    SystemParams p;
    p.N = 0;
    p.K = 1;
    p.reset_tasks_to_midpoint();
    Geometry geo;
    geo.irs = {p.R, 0.0};
    geo.center = {p.d1, 0.0};
    geo.devices = {{6.0, 8.0}};  // 10 m from the HAP
    const int seeds = 10000;
    double acc = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const ChannelSet ch = build_channels(p, geo, static_cast<std::uint64_t>(s));
        acc += ch.gains(IrsVector::zeros(0)).mean();
    }
    CHECK(acc / seeds == doctest::Approx(path_loss_gain(10.0, p.beta_ua, p)).epsilon(0.02));
}

TEST_CASE("IRS vector invariants")
{
    auto rng = make_stream(1, 5);
    const IrsVector u = IrsVector::random(50, rng, true);
    CHECK(u.max_modulus() == doctest::Approx(1.0).epsilon(1e-12));
    const IrsVector r = IrsVector::random(50, rng, false);
    CHECK(r.max_modulus() <= 1.0);
    Eigen::VectorXcd v(2);
    v << cplx(2.0, 0.0), cplx(0.0, 0.5);
    CHECK_THROWS_AS(IrsVector{v}, std::invalid_argument);
    const IrsVector pr = IrsVector::projected(v);
    CHECK(std::abs(pr[0] - cplx(1.0)) < 1e-15);
    CHECK(pr[1] == cplx(0.0, 0.5));
}

TEST_CASE("index checks")
{
    SystemParams p;
    const ChannelSet ch = oracle::make_channels(p, 2);
    CHECK_THROWS_AS(ch.cfr(p.K, 0, IrsVector::zeros(p.N)), std::out_of_range);
    CHECK_THROWS_AS(ch.cfr(0, p.M, IrsVector::zeros(p.N)), std::out_of_range);
    CHECK_THROWS_AS(ch.cfr(0, 0, IrsVector::zeros(p.N + 1)), std::invalid_argument);
}
