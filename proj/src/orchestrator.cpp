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

#include "irsmec/orchestrator.hpp"

#include "irsmec/log.hpp"
#include "irsmec/offload.hpp"
#include "irsmec/wet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irsmec {

const char* to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::with_irs: return "with-irs";
    case Scheme::rand_phase: return "rand-phase";
    case Scheme::without_irs: return "without-irs";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    if (name == "with-irs")
        return Scheme::with_irs;
    if (name == "rand-phase")
        return Scheme::rand_phase;
    if (name == "without-irs")
        return Scheme::without_irs;
    throw std::invalid_argument("unknown scheme '" + std::string(name) +
                                "' (expected with-irs, rand-phase or without-irs)");
}

ComputeSolution init_computing(const ChannelSet& ch, const SystemParams& params, std::mt19937_64& rng,
                               const IrsVector* theta_i)
{
    const int K = params.K;
    const int M = params.M;
    if (K > M)
        throw std::invalid_argument("K = " + std::to_string(K) + " devices exceed M = " + std::to_string(M) +
                                    " sub-bands");
    if (ch.K() != K || ch.M() != M)
        throw std::invalid_argument("channel dimensions do not match K and M");

    ComputeSolution s = ComputeSolution::empty(K, M, ch.N());
    std::uniform_real_distribution<double> freq(0.0, params.f_max);
    for (int k = 0; k < K; ++k)
        s.f[k] = freq(rng);
    s.theta = theta_i != nullptr ? *theta_i : IrsVector::random(ch.N(), rng, false);
    s.ell = offload_volume(params, s.f);

    const Eigen::MatrixXd G = ch.gains(s.theta);
    const double nf = params.noise_floor();
    std::vector<bool> taken(static_cast<std::size_t>(M), false);
    for (int k = 0; k < K; ++k) {
        int best = -1;
        for (int m = 0; m < M; ++m)
            if (!taken[static_cast<std::size_t>(m)] && (best < 0 || G(k, m) > G(k, best)))
                best = m;
        taken[static_cast<std::size_t>(best)] = true;
        if (!(s.ell[k] > 0.0))
            continue;
        if (!(G(k, best) > 0.0))
            throw InfeasibleError("device " + std::to_string(k) + " has no usable sub-band");
        const double bits_per_hz = s.ell[k] / (params.compute_time() * params.B);
        s.alpha(k, best) = 1;
        s.p(k, best) = nf * std::expm1(bits_per_hz * std::numbers::ln2) / G(k, best) * (1.0 + 1e-12);
    }
    s.zeta = Eigen::VectorXd::Zero(K);
    return s;
}

double total_energy(const WetSolution& wet, const ComputeSolution& compute, const SystemParams& params)
{
    return params.wet_time() * wet.p.sum() + params.vartheta * offload_volume(params, compute.f).sum();
}

double total_energy(const JointSolution& sol, const SystemParams& params)
{
    return total_energy(sol.wet, sol.compute, params);
}

JointSolution optimize_joint(const ChannelSet& ch_in, const SystemParams& params, std::uint64_t seed, Scheme scheme)
{
    params.validate();
    const ChannelSet ch = scheme == Scheme::without_irs ? ch_in.without_reflection() : ch_in;
    const bool skip_sca = scheme != Scheme::with_irs;
    const int N = ch.N();

    auto init_rng = make_stream(seed, stream::init);
    IrsVector theta_e0;
    IrsVector theta_i_fixed;
    if (scheme == Scheme::rand_phase) {
        auto rp = make_stream(seed, stream::random_phase);
        theta_e0 = IrsVector::random(N, rp, true);
        theta_i_fixed = IrsVector::random(N, rp, true);
    } else if (scheme == Scheme::with_irs) {
        theta_e0 = IrsVector::random(N, init_rng, true);
    } else {
        theta_e0 = IrsVector::zeros(0);
    }

    JointSolution sol;
    std::string last_error;
    bool started = false;
    for (int attempt = 1; attempt <= 5 && !started; ++attempt) {
        sol.init_attempts = attempt;
        try {
            sol.compute = init_computing(ch, params, init_rng, scheme == Scheme::rand_phase ? &theta_i_fixed : nullptr);
            sol.wet = optimize_wet(ch, sol.compute, theta_e0, params, skip_sca);
            started = true;
        } catch (const InfeasibleError& e) {
            last_error = e.what();
            log::info("initialization attempt " + std::to_string(attempt) + " failed: " + last_error);
        }
    }
    if (!started)
        throw InfeasibleError("no feasible initialization after 5 draws: " + last_error);
    sol.wet_traces.push_back(sol.wet.trace);
    sol.trace.push_back(total_energy(sol.wet, sol.compute, params));

    for (int it = 0; it < params.outer_t_max; ++it) {
        ComputingResult cr = optimize_computing(ch, sol.wet, sol.compute, params, skip_sca);
        sol.compute_traces.push_back(cr.trace);
        for (const auto& run : cr.sca_runs)
            sol.sca_traces.push_back(run.trace);
        sol.compute = std::move(cr.solution);

        WetSolution wet = optimize_wet(ch, sol.compute, sol.wet.theta, params, skip_sca, &sol.wet);
        sol.wet_traces.push_back(wet.trace);
        sol.wet = std::move(wet);

        const double prev = sol.trace.back();
        const double obj = total_energy(sol.wet, sol.compute, params);
        sol.trace.push_back(obj);
        sol.iterations = it + 1;
        if (relative_change(obj, prev) <= params.eps)
            break;
    }

    sol.compute.ell = offload_volume(params, sol.compute.f);
    sol.wet_energy = params.wet_time() * sol.wet.p.sum();
    sol.edge_energy = params.vartheta * sol.compute.ell.sum();
    sol.total_energy = sol.wet_energy + sol.edge_energy;
    return sol;
}

std::vector<TauPoint> sweep_tau(const ChannelSet& ch, const std::vector<double>& grid, const SystemParams& params,
                                std::uint64_t seed, Scheme scheme)
{
    std::vector<TauPoint> out;
    out.reserve(grid.size());
    for (double tau : grid) {
        TauPoint pt;
        pt.tau = tau;
        SystemParams p = params;
        p.tau = tau;
        try {
            pt.energy = optimize_joint(ch, p, seed, scheme).total_energy;
            pt.ok = true;
        } catch (const InfeasibleError& e) {
            pt.message = e.what();
        } catch (const std::invalid_argument& e) {
            pt.message = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

ConstraintReport check_constraints(const ChannelSet& ch_in, const JointSolution& sol, const SystemParams& params,
                                   double rel_tol, double abs_tol)
{
    ConstraintReport rep;
    auto fail = [&](const std::string& what) { rep.violations.push_back(what); };
    const int K = params.K;
    const int M = params.M;
    const auto& c = sol.compute;
    const auto& w = sol.wet;

    if (!(params.tau > 0.0 && params.tau < 1.0))
        fail("tau outside (0, 1)");
    if (w.p.size() != M || c.alpha.rows() != K || c.alpha.cols() != M || c.p.rows() != K || c.p.cols() != M ||
        c.f.size() != K) {
        fail("dimension mismatch");
        return rep;
    }
    const bool reflected = w.theta.size() > 0 || c.theta.size() > 0;
    const ChannelSet ch = reflected ? ch_in : ch_in.without_reflection();
    if (w.theta.size() != ch.N() || c.theta.size() != ch.N()) {
        fail("IRS vector length differs from N");
        return rep;
    }

    for (int m = 0; m < M; ++m)
        if (!(w.p[m] >= -abs_tol))
            fail("WET power negative on sub-band " + std::to_string(m));
    if (!(w.theta.max_modulus() <= 1.0 + abs_tol))
        fail("WET IRS coefficient outside the unit disk");
    for (int k = 0; k < K; ++k)
        if (!(c.f[k] >= -abs_tol && c.f[k] <= params.f_max * (1.0 + abs_tol)))
            fail("CPU frequency out of range for device " + std::to_string(k));
    for (int m = 0; m < M; ++m) {
        int users = 0;
        for (int k = 0; k < K; ++k) {
            const int a = c.alpha(k, m);
            if (a != 0 && a != 1)
                fail("association not binary at (" + std::to_string(k) + ", " + std::to_string(m) + ")");
            users += a;
            if (!(c.p(k, m) >= 0.0))
                fail("offloading power negative at (" + std::to_string(k) + ", " + std::to_string(m) + ")");
            if (a == 0 && c.p(k, m) != 0.0)
                fail("power on an unassociated sub-band at (" + std::to_string(k) + ", " + std::to_string(m) + ")");
            if (a == 1 && !(c.p(k, m) > 0.0))
                fail("associated sub-band without power at (" + std::to_string(k) + ", " + std::to_string(m) + ")");
        }
        if (users > 1)
            fail("sub-band " + std::to_string(m) + " shared by several devices");
    }
    if (!(c.theta.max_modulus() <= 1.0 + abs_tol))
        fail("offloading IRS coefficient outside the unit disk");

    const Eigen::VectorXd ell = offload_volume(params, c.f);
    const Eigen::VectorXd r = required_rates(params, ell);
    const Eigen::VectorXd R = offload_rates(ch, c, params);
    for (int k = 0; k < K; ++k) {
        const double harvested = harvested_energy(ch, params.tau, w.p, w.theta, k, params);
        const double spent = params.compute_time() * required_device_power(k, c, params);
        if (!(harvested >= spent * (1.0 - rel_tol)))
            fail("energy budget exceeded for device " + std::to_string(k));
        if (!(R[k] >= r[k] * (1.0 - rel_tol)))
            fail("offloading rate too low for device " + std::to_string(k));
    }
    return rep;
}

}  // namespace irsmec
