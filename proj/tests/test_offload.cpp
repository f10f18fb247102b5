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

#include "irsmec/offload.hpp"
#include "irsmec/wet.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace irsmec;

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Per-band term of the Lagrangian: -lambda (p + p_c) + mu B log2(1 + p g / nf).
double band_term(double lambda, double mu, double gain, double p, const SystemParams& params)
{
    return -lambda * (p + params.p_c) + mu * params.B * std::log2(1.0 + p * gain / params.noise_floor());
}

double usage_of(const Eigen::MatrixXi& alpha, const Eigen::MatrixXd& p, const SystemParams& params)
{
    double u = 0.0;
    for (Eigen::Index k = 0; k < alpha.rows(); ++k)
        for (Eigen::Index m = 0; m < alpha.cols(); ++m)
            if (alpha(k, m) != 0)
                u += p(k, m) + params.p_c;
    return u;
}

SystemParams small_params(int K, int M, int N)
{
    SystemParams p;
    p.K = K;
    p.M = M;
    p.N = N;
    p.reset_tasks_to_midpoint();
    return p;
}

ChannelSet toy_channel(cplx h, cplx v)
{
    Eigen::VectorXcd hd(1);
    hd << h;
    Eigen::MatrixXcd V(1, 1);
    V << v;
    return ChannelSet({hd}, {V});
}

Eigen::VectorXd rates_check(const ChannelSet& ch, const IrsVector& th, const DualResult& r, const SystemParams& p)
{
    Eigen::VectorXd R(r.alpha.rows());
    for (Eigen::Index k = 0; k < R.size(); ++k)
        R[k] = offload_rate(ch, th, r.alpha.row(k), r.p.row(k), static_cast<int>(k), p);
    return R;
}

}  // namespace

TEST_CASE("water-filling power closed form")
{
    SystemParams p;
    CHECK(waterfill_power(1.0, 0.0, 1e-5, p) == 0.0);
    CHECK(waterfill_power(1.0, 1.0, 0.0, p) == 0.0);

    SystemParams unit;
    unit.B = 1.0;
    unit.Gamma = 1.0;
    unit.sigma2 = 0.5;  // noise over gain = 0.5 at gain 1
    const double closed = waterfill_power(1.0, 1.0, 1.0, unit);
    CHECK(closed == doctest::Approx(1.0 / kLn2 - 0.5).epsilon(1e-12));
    double arg = 0.0;
    oracle::grid_max([&](double q) { return band_term(1.0, 1.0, 1.0, q, unit); }, 0.0, 3.0, 300001, &arg);
    CHECK(arg == doctest::Approx(0.942695).epsilon(1e-5));

    const double mu = 1e-12;
    CHECK(waterfill_power(2.0, mu, 1e30, p) == doctest::Approx(mu * p.B / (2.0 * kLn2)).epsilon(1e-9));
    // lambda below the floor uses the floor
    CHECK(waterfill_power(0.0, mu, 1.0, p) == waterfill_power(p.lambda_min, mu, 1.0, p));
}

TEST_CASE("band assignment")
{
    SystemParams p;
    DualState d;
    d.lambda = Eigen::VectorXd::Ones(1);
    d.mu = Eigen::VectorXd::Constant(1, 1e-12);
    Eigen::VectorXd g1(1);
    g1 << 1e-6;
    CHECK(assign_subband(0, d, g1, p).k == 0);

    d.lambda = Eigen::VectorXd::Ones(2);
    d.mu = Eigen::VectorXd::Constant(2, 1e-12);
    Eigen::VectorXd g2(2);
    g2 << 1e-6, 2e-6;
    CHECK(assign_subband(0, d, g2, p).k == 1);

    // all scores negative: still the argmax
    d.mu.setConstant(1e-25);
    d.lambda << 2.0, 1.0;
    const Assignment a = assign_subband(0, d, g2, p);
    CHECK(a.score < 0.0);
    CHECK(a.k == 1);

    // ties go to the lowest index
    d.lambda.setOnes();
    g2 << 3e-6, 3e-6;
    d.mu.setConstant(1e-12);
    CHECK(assign_subband(0, d, g2, p).k == 0);
}

TEST_CASE("assignment is invariant to a common scaling of the duals")
{
    SystemParams p;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        DualState d;
        d.lambda = Eigen::VectorXd::Zero(3);
        d.mu = Eigen::VectorXd::Zero(3);
        Eigen::VectorXd g(3);
        for (int k = 0; k < 3; ++k) {
            d.lambda[k] = 0.5 + u(rng);
            d.mu[k] = 1e-13 * std::pow(10.0, 2.0 * u(rng));
            g[k] = 1e-7 * std::pow(10.0, 3.0 * u(rng));
        }
        const int k0 = assign_subband(0, d, g, p).k;
        const double c = 0.1 + 10.0 * u(rng);
        d.lambda *= c;
        d.mu *= c;
        CHECK(assign_subband(0, d, g, p).k == k0);
    }
}

TEST_CASE("energy slack")
{
    SystemParams p;
    Eigen::RowVectorXi a = Eigen::RowVectorXi::Zero(2);
    Eigen::RowVectorXd q = Eigen::RowVectorXd::Zero(2);
    CHECK(slack_zeta(0.0, 0.0, a, q, p) == 0.0);
    p.p_c = 0.0;
    a << 1, 0;
    q << 0.4e-3, 0.0;
    CHECK(slack_zeta(1e-3 * p.compute_time(), 0.0, a, q, p) == doctest::Approx(0.6e-3));
    q << 2e-3, 0.0;
    CHECK(slack_zeta(1e-3 * p.compute_time(), 0.0, a, q, p) < 0.0);
}

TEST_CASE("offload rate")
{
    SystemParams p = small_params(1, 1, 1);
    const double nf = p.noise_floor();
    const ChannelSet ch = toy_channel(cplx(1e-3, 0.0), cplx(0.0, 0.0));  // |C|^2 = 1e-6
    Eigen::RowVectorXi a(1);
    a << 1;
    Eigen::RowVectorXd q(1);
    q << 0.0;
    const IrsVector th = IrsVector::zeros(1);
    CHECK(offload_rate(ch, th, a, q, 0, p) == 0.0);
    q << nf / 1e-6;
    CHECK(offload_rate(ch, th, a, q, 0, p) == doctest::Approx(p.B).epsilon(1e-12));
    q << 3.0 * nf / 1e-6;
    CHECK(offload_rate(ch, th, a, q, 0, p) == doctest::Approx(2.0 * p.B).epsilon(1e-12));
    a << 0;
    CHECK(offload_rate(ch, th, a, q, 0, p) == 0.0);
}

TEST_CASE("subgradients match finite differences of the Lagrangian")
{
    SystemParams p;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelSet ch = oracle::make_channels(p, seed);
        ComputeSolution s = ComputeSolution::empty(p.K, p.M, p.N);
        s.theta = IrsVector::random(p.N, rng, false);
        for (int k = 0; k < p.K; ++k) {
            s.f[k] = p.f_max * u(rng);
            for (int m = k; m < p.M; m += p.K)
                if (u(rng) < 0.5) {
                    s.alpha(k, m) = 1;
                    s.p(k, m) = 1e-7 * u(rng);
                }
        }
        Eigen::VectorXd E(p.K);
        for (int k = 0; k < p.K; ++k)
            E[k] = 1e-8 * u(rng);
        DualState d;
        d.lambda = Eigen::VectorXd::Ones(p.K) + Eigen::VectorXd::Random(p.K).cwiseAbs();
        d.mu = 1e-13 * (Eigen::VectorXd::Ones(p.K) + Eigen::VectorXd::Random(p.K).cwiseAbs());
        // zeta = 0 so that the lambda-derivative is the bare budget violation
        s.zeta = Eigen::VectorXd::Zero(p.K);
        const Subgradients sg = subgradients(s, E, ch, p);
        for (int k = 0; k < p.K; ++k) {
            DualState lp = d, lm = d;
            const double hl = 1e-3 * d.lambda[k];
            lp.lambda[k] += hl;
            lm.lambda[k] -= hl;
            const double dl = (lagrangian(s, E, lp, ch, p) - lagrangian(s, E, lm, ch, p)) / (2.0 * hl);
            CHECK(-dl == doctest::Approx(sg.s_lambda[k]).epsilon(1e-6));

            DualState mp = d, mm = d;
            const double hm = 1e-3 * d.mu[k];
            mp.mu[k] += hm;
            mm.mu[k] -= hm;
            const double dm = (lagrangian(s, E, mp, ch, p) - lagrangian(s, E, mm, ch, p)) / (2.0 * hm);
            CHECK(-dm == doctest::Approx(sg.s_mu[k]).epsilon(1e-6));
        }
    }
}

TEST_CASE("minimum-power water-filling against bisection")
{
    SystemParams p;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        Eigen::VectorXd g(8);
        for (int m = 0; m < 8; ++m)
            g[m] = 1e-8 * std::pow(10.0, 3.0 * u(rng));
        if (t % 5 == 0)
            g[t % 8] = 0.0;
        const double rate = 1e5 + 4e6 * u(rng);
        const Eigen::VectorXd got = min_power_waterfill(g, rate, p);
        const Eigen::VectorXd ref = oracle::waterfill_bisect(g, rate, p.B, p.noise_floor());
        REQUIRE(got.size() == 8);
        CHECK(got.sum() == doctest::Approx(ref.sum()).epsilon(1e-9));
        CHECK(oracle::rate(got, g, p.B, p.noise_floor()) >= rate * (1.0 - 1e-12));
    }
    CHECK(min_power_waterfill(Eigen::VectorXd::Zero(4), 1e5, p).size() == 0);
    CHECK(min_power_waterfill(Eigen::VectorXd::Ones(4), 0.0, p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dual loop with nothing to offload")
{
    SystemParams p;
    const ChannelSet ch = oracle::make_channels(p, 1);
    const Eigen::VectorXd f = Eigen::VectorXd::Constant(p.K, p.f_max);
    p.L.assign(3, 100.0);
    const DualResult r = dual_loop(ch, IrsVector::zeros(p.N), f, Eigen::VectorXd::Constant(p.K, 1e-6), p);
    CHECK(r.status == DualStatus::ok);
    CHECK(r.alpha.sum() == 0);
    CHECK(r.p.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single device matches the minimum-power allocation")
{
    SystemParams p = small_params(1, 8, 4);
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelSet ch = oracle::make_channels(p, seed);
        const IrsVector th = IrsVector::random(p.N, rng, true);
        const Eigen::VectorXd f = Eigen::VectorXd::Constant(1, 3e7);
        const Eigen::VectorXd E = Eigen::VectorXd::Constant(1, 1e-3);
        const DualResult r = dual_loop(ch, th, f, E, p);
        REQUIRE(r.status == DualStatus::ok);
        const Eigen::VectorXd rates = required_rates(p, offload_volume(p, f));
        const auto ref = oracle::exhaustive_association(ch.gains(th), rates, E / p.compute_time(), p);
        const double got = usage_of(r.alpha, r.p, p);
        CHECK(got <= ref.usage * 1.05);
        CHECK(got >= ref.usage * (1.0 - 1e-9));
    }
}

TEST_CASE("two devices within 5% of exhaustive association")
{
    SystemParams p = small_params(2, 8, 4);
    std::mt19937_64 rng(78);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const ChannelSet ch = oracle::make_channels(p, seed);
        const IrsVector th = IrsVector::random(p.N, rng, true);
        const Eigen::VectorXd f = Eigen::VectorXd::Constant(2, 3e7);
        const Eigen::VectorXd E = Eigen::VectorXd::Constant(2, 1e-3);
        const DualResult r = dual_loop(ch, th, f, E, p);
        REQUIRE(r.status == DualStatus::ok);
        for (int m = 0; m < p.M; ++m)
            CHECK(r.alpha.col(m).sum() <= 1);
        const Eigen::VectorXd rates = required_rates(p, offload_volume(p, f));
        const Eigen::VectorXd R = rates_check(ch, th, r, p);
        for (int k = 0; k < 2; ++k)
            CHECK(R[k] >= rates[k] * (1.0 - 1e-9));
        const auto ref = oracle::exhaustive_association(ch.gains(th), rates, E / p.compute_time(), p);
        CHECK(usage_of(r.alpha, r.p, p) <= ref.usage * 1.05);
    }
}

TEST_CASE("frequency update branches")
{
    SystemParams p = small_params(3, 2, 0);
    const Eigen::MatrixXi a = Eigen::MatrixXi::Zero(3, 2);
    const Eigen::MatrixXd q = Eigen::MatrixXd::Zero(3, 2);
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd budget(3);
    budget << -1e-9, p.kappa * 5e7 * 5e7, 2.0 * p.kappa * p.f_max * p.f_max;
    const Eigen::VectorXd f = update_frequencies(budget * p.compute_time(), a, q, z, p);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(5e7).epsilon(1e-9));
    CHECK(f[2] == p.f_max);
}

TEST_CASE("frequency update is the largest feasible frequency")
{
    SystemParams p = small_params(1, 4, 0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        Eigen::MatrixXi a = Eigen::MatrixXi::Zero(1, 4);
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(1, 4);
        double use = 0.0;
        for (int m = 0; m < 4; ++m)
            if (u(rng) < 0.5) {
                a(0, m) = 1;
                q(0, m) = 1e-7 * u(rng);
                use += q(0, m) + p.p_c;
            }
        const double zeta = 1e-8 * u(rng);
        const double b = use + zeta + 1.5 * p.kappa * p.f_max * p.f_max * u(rng);
        const Eigen::VectorXd E = Eigen::VectorXd::Constant(1, b * p.compute_time());
        const double f = update_frequencies(E, a, q, Eigen::VectorXd::Constant(1, zeta), p)[0];
        double lo = 0.0;
        double hi = p.f_max;
        if (p.kappa * hi * hi + use + zeta > b) {
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                (p.kappa * mid * mid + use + zeta <= b ? lo : hi) = mid;
            }
        } else {
            lo = hi;
        }
        CHECK(f == doctest::Approx(lo).epsilon(1e-6));
        CHECK(p.kappa * f * f + use + zeta <= b * (1.0 + 1e-12));
    }
}

TEST_CASE("offload IRS design on a one-element toy")
{
    SystemParams p = small_params(1, 1, 1);
    p.Ld = p.L1 = p.L2 = 1;
    p.eps = 1e-12;
    p.t_max = 200;
    const cplx h(2e-3, 1e-3);
    const cplx v(-1e-3, 1.5e-3);
    const ChannelSet ch = toy_channel(h, v);
    Eigen::MatrixXi a(1, 1);
    a << 1;
    Eigen::MatrixXd q(1, 1);
    q << 1e-6;
    const Eigen::VectorXd f = Eigen::VectorXd::Zero(1);
    const IrsVector start(Eigen::VectorXcd::Constant(1, cplx(0.0, 0.2)));
    const ScaResult r = sca_theta_i(ch, a, q, f, start, p);
    const double ref = oracle::phase_sweep_max([&](cplx t) { return std::norm(h + v * t); });
    CHECK(std::norm(ch.cfr(0, 0, r.theta)) == doctest::Approx(ref).epsilon(1e-3));
    CHECK(r.theta.max_modulus() <= 1.0 + 1e-9);
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        CHECK(r.trace[i] >= 0.0);
        if (i > 0)
            CHECK(r.trace[i] >= r.trace[i - 1]);
    }

    // no active band: the start comes back
    const ScaResult idle = sca_theta_i(ch, Eigen::MatrixXi::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1), f, start, p);
    CHECK(idle.theta.coeffs() == start.coeffs());
}

namespace {

// Feasible computing start and the WET design that powers it.
struct Start {
    ChannelSet ch;
    ComputeSolution s;
    WetSolution wet;
};

Start feasible_start(const SystemParams& p, std::uint64_t seed, double wet_scale)
{
    Start st{oracle::make_channels(p, seed), ComputeSolution::empty(p.K, p.M, p.N), {}};
    auto rng = make_stream(seed, 555);
    st.s.theta = IrsVector::random(p.N, rng, true);
    st.s.f.setConstant(2e7);
    const Eigen::VectorXd r = required_rates(p, offload_volume(p, st.s.f));
    const Eigen::MatrixXd G = st.ch.gains(st.s.theta);
    for (int k = 0; k < p.K; ++k) {
        const int m = k;  // one band each
        Eigen::VectorXd g = Eigen::VectorXd::Zero(p.M);
        g[m] = G(k, m);
        const Eigen::VectorXd w = min_power_waterfill(g, r[k], p);
        st.s.alpha(k, m) = 1;
        st.s.p(k, m) = w[m];
    }
    st.wet.theta = IrsVector::zeros(p.N);
    st.wet.p = solve_wet_power(st.ch, st.wet.theta, st.s, p) * wet_scale;
    st.wet.objective = p.wet_time() * st.wet.p.sum();
    return st;
}

}  // namespace

TEST_CASE("alternation keeps the edge energy non-increasing")
{
    SystemParams p;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Start st = feasible_start(p, seed, 1.0 + 0.5 * static_cast<double>(seed));
        const ComputingResult r = optimize_computing(st.ch, st.wet, st.s, p);
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            CHECK(r.trace[i] <= r.trace[i - 1] * (1.0 + 1e-6));
        for (const auto& sca : r.sca_runs)
            for (std::size_t i = 1; i < sca.trace.size(); ++i)
                CHECK(sca.trace[i] >= sca.trace[i - 1]);
        const ComputeSolution& s = r.solution;
        for (int m = 0; m < p.M; ++m)
            CHECK(s.alpha.col(m).sum() <= 1);
        const Eigen::VectorXd need = required_rates(p, offload_volume(p, s.f));
        for (int k = 0; k < p.K; ++k) {
            const double E = harvested_energy(st.ch, p.tau, st.wet.p, st.wet.theta, k, p);
            CHECK(p.compute_time() * required_device_power(k, s, p) <= E * (1.0 + 1e-9));
            CHECK(offload_rate(st.ch, s.theta, s.alpha.row(k), s.p.row(k), k, p) >= need[k] * (1.0 - 1e-6));
            CHECK(s.f[k] <= p.f_max);
        }
    }
}

TEST_CASE("generous energy drives f to the cap")
{
    SystemParams p;
    const Start st = feasible_start(p, 3, 1e6);
    const ComputingResult r = optimize_computing(st.ch, st.wet, st.s, p);
    double expect = 0.0;
    for (int k = 0; k < p.K; ++k) {
        CHECK(r.solution.f[k] == doctest::Approx(p.f_max).epsilon(1e-9));
        expect += p.L[k] - p.compute_time() * p.f_max / p.c[k];
    }
    CHECK(r.trace.back() == doctest::Approx(p.vartheta * expect).epsilon(1e-9));
}

TEST_CASE("small tasks are computed locally")
{
    SystemParams p;
    p.L.assign(3, 100.0);
    p.fixed_tasks = true;
    const Start st = feasible_start(p, 4, 10.0);
    const ComputingResult r = optimize_computing(st.ch, st.wet, st.s, p);
    CHECK(r.trace.back() == 0.0);
    CHECK(r.solution.ell.cwiseAbs().maxCoeff() == 0.0);
}
