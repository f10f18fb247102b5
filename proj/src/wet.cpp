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

#include "irsmec/wet.hpp"

#include "irsmec/log.hpp"
#include "irsmec/solver.hpp"
#include "sca_common.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irsmec {

namespace {

// harvested power per device, sum_m eta tau/(1-tau) p_m g_km, in the units
// of required_device_power
Eigen::VectorXd harvest_rate(const Eigen::MatrixXd& gains, const Eigen::VectorXd& p_e, const SystemParams& params)
{
    const double rho = params.eta * params.tau / (1.0 - params.tau);
    return rho * (gains * p_e);
}

Eigen::VectorXd demands(const ComputeSolution& compute, const SystemParams& params)
{
    Eigen::VectorXd d(params.K);
    for (int k = 0; k < params.K; ++k)
        d[k] = required_device_power(k, compute, params);
    return d;
}

bool covers(const Eigen::VectorXd& harvest, const Eigen::VectorXd& demand, double rel_tol)
{
    for (Eigen::Index k = 0; k < demand.size(); ++k)
        if (harvest[k] < demand[k] * (1.0 - rel_tol))
            return false;
    return true;
}

}  // namespace

double required_device_power(int k, const ComputeSolution& compute, const SystemParams& params)
{
    double use = params.kappa * compute.f[k] * compute.f[k];
    for (Eigen::Index m = 0; m < compute.alpha.cols(); ++m)
        if (compute.alpha(k, m) != 0)
            use += compute.p(k, m) + params.p_c;
    return use;
}

double harvested_energy(const ChannelSet& ch, double tau, const Eigen::VectorXd& p_e, const IrsVector& theta_e, int k,
                        const SystemParams& params)
{
    const Eigen::VectorXd g = ch.cfr_row(k, theta_e).cwiseAbs2();
    return params.eta * tau * params.T * g.dot(p_e);
}

Eigen::VectorXd solve_wet_power(const ChannelSet& ch, const IrsVector& theta_e, const ComputeSolution& compute,
                                const SystemParams& params)
{
    const int K = params.K;
    const int M = params.M;
    const Eigen::MatrixXd gains = ch.gains(theta_e);
    const Eigen::VectorXd demand = demands(compute, params);
    const double rho = params.eta * params.tau / (1.0 - params.tau);

    // Row k normalized to sum_m a_km p_m >= 1.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(K, M);
    std::vector<int> rows;
    for (int k = 0; k < K; ++k) {
        if (!(demand[k] > 0.0))
            continue;
        if (!(rho * gains.row(k).maxCoeff() > 0.0))
            throw InfeasibleError("device " + std::to_string(k) + " cannot harvest energy (zero channel or eta = 0)");
        a.row(k) = rho * gains.row(k) / demand[k];
        rows.push_back(k);
    }
    if (rows.empty())
        return Eigen::VectorXd::Zero(M);

    const double amax = a.maxCoeff();
    const double p_scale = 1.0 / amax;
    solver::ConeProblem lp(M);
    lp.objective.setOnes();
    for (int k : rows)
        lp.add_inequality(-a.row(k) * p_scale, -1.0);
    for (int m = 0; m < M; ++m)
        lp.set_lower(m, 0.0);
    const auto sol = solver::solve_lp(lp);
    if (sol.status != solver::Status::optimal)
        throw InfeasibleError(std::string("WET power LP ended with status ") + solver::to_string(sol.status));

    Eigen::VectorXd p = sol.x.cwiseMax(0.0) * p_scale;
    // lift onto the feasible side of every demand row
    double lift = 1.0;
    for (int k : rows)
        lift = std::max(lift, 1.0 / a.row(k).dot(p));
    return p * lift;
}

ScaResult sca_theta_e(const ChannelSet& ch, const Eigen::VectorXd& p_e, const ComputeSolution& compute,
                      const IrsVector& theta_init, const SystemParams& params)
{
    const int K = params.K;
    const int M = params.M;
    const int N = ch.N();
    ScaResult res;
    res.theta = theta_init;

    const Eigen::VectorXd demand = demands(compute, params);
    const double rho = params.eta * params.tau / (1.0 - params.tau);
    auto slacks = [&](const IrsVector& th) -> Eigen::VectorXd { return harvest_rate(ch.gains(th), p_e, params) - demand; };

    res.trace.push_back(slacks(theta_init).cwiseMax(0.0).sum());
    if (N == 0 || !(p_e.maxCoeff() > 0.0))
        return res;

    const double scale = std::max(demand.maxCoeff(), harvest_rate(ch.gains(theta_init), p_e, params).maxCoeff());
    if (!(scale > 0.0))
        return res;

    const int nv = 2 * N + K;
    for (int it = 0; it < params.t_max; ++it) {
        solver::ConeProblem prob(nv);
        for (int k = 0; k < K; ++k)
            prob.objective[2 * N + k] = -1.0;
        for (int k = 0; k < K; ++k) {
            const Eigen::VectorXcd row = ch.cfr_row(k, res.theta);
            // rho sum_m p_m y_km(theta) - xi_k >= demand_k, all over `scale`
            double constant = 0.0;
            Eigen::RowVectorXd grad = Eigen::RowVectorXd::Zero(nv);
            for (int m = 0; m < M; ++m) {
                if (p_e[m] <= 0.0)
                    continue;
                const auto lm = detail::linearize(ch, k, m, row[m]);
                constant += p_e[m] * lm.constant;
                grad.head(2 * N) += p_e[m] * lm.grad;
            }
            Eigen::RowVectorXd g = -rho * grad / scale;
            g[2 * N + k] = 1.0;
            prob.add_inequality(g, (rho * constant - demand[k]) / scale);
            prob.set_lower(2 * N + k, 0.0);
        }
        detail::add_unit_disk_constraints(prob, N);

        const auto sol = solver::solve_socp(prob);
        if (sol.status != solver::Status::optimal) {
            log::warn(std::string("WET SCA subproblem ended with status ") + solver::to_string(sol.status));
            res.solver_ok = false;
            break;
        }
        const IrsVector cand = detail::theta_from(sol.x, N);
        const Eigen::VectorXd s = slacks(cand);
        const double value = -sol.primal_objective * scale;
        const double prev = res.trace.back();
        if (s.minCoeff() < -1e-9 * scale || value < prev - 1e-9 * std::max(prev, scale)) {
            log::debug("WET SCA: candidate rejected (min slack " + std::to_string(s.minCoeff() / scale) +
                       ", value " + std::to_string(value / scale) + ", previous " + std::to_string(prev / scale) + ")");
            break;
        }
        res.theta = cand;
        res.trace.push_back(std::max(value, prev));
        if (relative_change(res.trace.back(), prev) <= params.eps)
            break;
    }
    return res;
}

WetSolution optimize_wet(const ChannelSet& ch, const ComputeSolution& compute, const IrsVector& theta_init,
                         const SystemParams& params, bool skip_sca, const WetSolution* incumbent)
{
    const double tT = params.wet_time();
    WetSolution best;
    best.theta = theta_init;
    best.p = solve_wet_power(ch, theta_init, compute, params);
    best.objective = tT * best.p.sum();
    best.trace.push_back(best.objective);

    if (!skip_sca && ch.N() > 0 && best.p.maxCoeff() > 0.0) {
        for (int it = 0; it < params.t_max; ++it) {
            const ScaResult sca = sca_theta_e(ch, best.p, compute, best.theta, params);
            Eigen::VectorXd p;
            try {
                p = solve_wet_power(ch, sca.theta, compute, params);
            } catch (const InfeasibleError&) {
                break;
            }
            const double obj = tT * p.sum();
            if (obj > best.objective)
                break;
            const double prev = best.objective;
            best.theta = sca.theta;
            best.p = std::move(p);
            best.objective = obj;
            best.trace.push_back(obj);
            if (relative_change(obj, prev) <= params.eps)
                break;
        }
    }

    if (incumbent != nullptr && incumbent->objective < best.objective && incumbent->theta.size() == ch.N()) {
        const Eigen::VectorXd demand = demands(compute, params);
        if (covers(harvest_rate(ch.gains(incumbent->theta), incumbent->p, params), demand, 1e-10)) {
            WetSolution kept = *incumbent;
            kept.trace = best.trace;
            kept.trace.push_back(kept.objective);
            return kept;
        }
    }
    return best;
}

}  // namespace irsmec
