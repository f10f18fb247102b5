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

#include "irsmec/log.hpp"
#include "irsmec/solver.hpp"
#include "irsmec/wet.hpp"
#include "sca_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace irsmec {

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct Waterfill {
    Eigen::VectorXd p;
    double level = 0.0;
    bool ok = false;
};

Waterfill waterfill_to_rate(const Eigen::VectorXd& gains, double rate, const SystemParams& params)
{
    Waterfill w;
    w.p = Eigen::VectorXd::Zero(gains.size());
    if (!(rate > 0.0)) {
        w.ok = true;
        return w;
    }
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < gains.size(); ++i)
        if (gains[i] > 0.0)
            idx.push_back(static_cast<int>(i));
    if (idx.empty())
        return w;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return gains[a] > gains[b] || (gains[a] == gains[b] && a < b); });

    const double nf = params.noise_floor();
    const double target = rate / params.B;
    double sum_log_inv = 0.0;
    double level_log2 = 0.0;
    int used = 0;
    for (std::size_t n = 1; n <= idx.size(); ++n) {
        const double inv = nf / gains[idx[n - 1]];
        sum_log_inv += std::log2(inv);
        const double candidate = (target + sum_log_inv) / static_cast<double>(n);
        if (std::exp2(candidate) <= inv)
            break;
        level_log2 = candidate;
        used = static_cast<int>(n);
    }
    // small upward nudge so the rate is met after rounding
    const double level = std::exp2(level_log2) * (1.0 + 1e-12);
    for (int n = 0; n < used; ++n) {
        const int i = idx[static_cast<std::size_t>(n)];
        w.p[i] = std::max(0.0, level - nf / gains[i]);
    }
    w.level = level;
    w.ok = true;
    return w;
}

// Minimum-usage allocation sum(p + p_c) for one device over a candidate band
// set: the top-n bands by gain for the best n.
Waterfill best_subset(const Eigen::VectorXd& gains, double rate, const SystemParams& params)
{
    Waterfill best;
    double best_use = std::numeric_limits<double>::infinity();
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < gains.size(); ++i)
        if (gains[i] > 0.0)
            idx.push_back(static_cast<int>(i));
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return gains[a] > gains[b] || (gains[a] == gains[b] && a < b); });
    Eigen::VectorXd g = Eigen::VectorXd::Zero(gains.size());
    for (int i : idx) {
        g[i] = gains[i];
        Waterfill w = waterfill_to_rate(g, rate, params);
        if (!w.ok)
            continue;
        const int bands = static_cast<int>((w.p.array() > 0.0).count());
        const double use = w.p.sum() + params.p_c * bands;
        if (use < best_use) {
            best_use = use;
            best = std::move(w);
        }
    }
    return best;
}

// Smallest water level at which a band of this gain has a positive score
// with lambda = 1: (nf/g)(x ln x - x + 1) = p_c where x = level g / nf.
double positive_score_level(double gain, const SystemParams& params)
{
    const double nf = params.noise_floor();
    const double c = params.p_c * gain / nf;
    auto h = [](double x) { return x * std::log(x) - x + 1.0; };
    double lo = 1.0;
    double hi = 2.0;
    while (h(hi) < c)
        hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < c ? lo : hi) = mid;
    }
    return hi * nf / gain * (1.0 + 1e-6);
}

double usage(const Eigen::RowVectorXi& alpha_row, const Eigen::RowVectorXd& p_row, const SystemParams& params)
{
    double u = 0.0;
    for (Eigen::Index m = 0; m < alpha_row.size(); ++m)
        if (alpha_row[m] != 0)
            u += p_row[m] + params.p_c;
    return u;
}

Eigen::VectorXd budgets(const Eigen::VectorXd& E, const SystemParams& params) { return E / params.compute_time(); }

Eigen::VectorXd slacks(const Eigen::VectorXd& b, const Eigen::VectorXd& f, const Eigen::MatrixXi& alpha,
                       const Eigen::MatrixXd& p, const SystemParams& params)
{
    Eigen::VectorXd z(b.size());
    for (Eigen::Index k = 0; k < b.size(); ++k)
        z[k] = b[k] - params.kappa * f[k] * f[k] - usage(alpha.row(k), p.row(k), params);
    return z;
}

bool energy_ok(const Eigen::VectorXd& zeta, const Eigen::VectorXd& b)
{
    for (Eigen::Index k = 0; k < zeta.size(); ++k)
        if (zeta[k] < -1e-12 * std::max(b[k], 0.0))
            return false;
    return true;
}

Eigen::VectorXd rates_for(const Eigen::MatrixXd& gains, const Eigen::MatrixXi& alpha, const Eigen::MatrixXd& p,
                          const SystemParams& params)
{
    const double nf = params.noise_floor();
    Eigen::VectorXd R = Eigen::VectorXd::Zero(gains.rows());
    for (Eigen::Index k = 0; k < gains.rows(); ++k)
        for (Eigen::Index m = 0; m < gains.cols(); ++m)
            if (alpha(k, m) != 0)
                R[k] += params.B * std::log2(1.0 + p(k, m) * gains(k, m) / nf);
    return R;
}

// Greedy single-band moves on a complete association: give a free band to a
// device or move a band between devices whenever the summed usage drops and
// the receiving and donating devices stay within `room` (usage budget).
void improve_association(const Eigen::MatrixXd& G, const Eigen::VectorXd& r, const Eigen::VectorXd& room,
                         Eigen::MatrixXi& alpha, Eigen::MatrixXd& p, const SystemParams& params)
{
    const int K = static_cast<int>(G.rows());
    const int M = static_cast<int>(G.cols());
    auto solve_for = [&](int k, const Eigen::RowVectorXi& owned, Waterfill& w) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(M);
        for (int m = 0; m < M; ++m)
            if (owned[m] != 0)
                g[m] = G(k, m);
        w = best_subset(g, r[k], params);
        if (!w.ok || !(w.p.maxCoeff() > 0.0))
            return std::numeric_limits<double>::infinity();
        return w.p.sum() + params.p_c * static_cast<double>((w.p.array() > 0.0).count());
    };
    auto current = [&](int k) { return r[k] > 0.0 ? usage(alpha.row(k), p.row(k), params) : 0.0; };

    for (int round = 0; round < M * K; ++round) {
        double best_gain = 0.0;
        int best_m = -1;
        int best_to = -1;
        int best_from = -1;
        Waterfill w_to;
        Waterfill w_from;
        for (int m = 0; m < M; ++m) {
            int from = -1;
            for (int k = 0; k < K; ++k)
                if (alpha(k, m) != 0)
                    from = k;
            for (int to = 0; to < K; ++to) {
                if (to == from || !(r[to] > 0.0) || !(G(to, m) > 0.0))
                    continue;
                Eigen::RowVectorXi owned_to = alpha.row(to);
                owned_to[m] = 1;
                Waterfill wt;
                const double u_to = solve_for(to, owned_to, wt);
                if (!(u_to <= room[to]))
                    continue;
                double gain = current(to) - u_to;
                Waterfill wf;
                if (from >= 0) {
                    Eigen::RowVectorXi owned_from = alpha.row(from);
                    owned_from[m] = 0;
                    const double u_from = solve_for(from, owned_from, wf);
                    if (!(u_from <= room[from]))
                        continue;
                    gain += current(from) - u_from;
                }
                if (gain > best_gain * (1.0 + 1e-12) + 1e-15 * std::abs(current(to))) {
                    best_gain = gain;
                    best_m = m;
                    best_to = to;
                    best_from = from;
                    w_to = std::move(wt);
                    w_from = std::move(wf);
                }
            }
        }
        if (best_m < 0)
            return;
        auto write = [&](int k, const Waterfill& w) {
            alpha.row(k).setZero();
            p.row(k).setZero();
            for (int m = 0; m < M; ++m)
                if (w.p[m] > 0.0) {
                    alpha(k, m) = 1;
                    p(k, m) = w.p[m];
                }
        };
        if (best_from >= 0)
            write(best_from, w_from);
        write(best_to, w_to);
    }
}

}  // namespace

double waterfill_power(double lambda, double mu, double gain, const SystemParams& params)
{
    if (!(gain > 0.0))
        return 0.0;
    const double lam = std::max(lambda, params.lambda_min);
    return std::max(0.0, mu * params.B / (lam * kLn2) - params.noise_floor() / gain);
}

double band_score(double lambda, double mu, double gain, const SystemParams& params)
{
    const double p = waterfill_power(lambda, mu, gain, params);
    const double rate = gain > 0.0 ? params.B * std::log2(1.0 + p * gain / params.noise_floor()) : 0.0;
    return -lambda * (p + params.p_c) + mu * rate;
}

Assignment assign_subband(int /*m*/, const DualState& dual, const Eigen::VectorXd& gains, const SystemParams& params)
{
    Assignment best;
    best.score = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < gains.size(); ++k) {
        const double s = band_score(dual.lambda[k], dual.mu[k], gains[k], params);
        if (s > best.score) {
            best.score = s;
            best.k = static_cast<int>(k);
            best.p = waterfill_power(dual.lambda[k], dual.mu[k], gains[k], params);
        }
    }
    return best;
}

double slack_zeta(double E_k, double f_k, const Eigen::RowVectorXi& alpha_row, const Eigen::RowVectorXd& p_row,
                  const SystemParams& params)
{
    return E_k / params.compute_time() - params.kappa * f_k * f_k - usage(alpha_row, p_row, params);
}

double offload_rate(const ChannelSet& ch, const IrsVector& theta, const Eigen::RowVectorXi& alpha_row,
                    const Eigen::RowVectorXd& p_row, int k, const SystemParams& params)
{
    const Eigen::VectorXd g = ch.cfr_row(k, theta).cwiseAbs2();
    double R = 0.0;
    for (Eigen::Index m = 0; m < alpha_row.size(); ++m)
        if (alpha_row[m] != 0)
            R += params.B * std::log2(1.0 + p_row[m] * g[m] / params.noise_floor());
    return R;
}

Eigen::VectorXd offload_rates(const ChannelSet& ch, const ComputeSolution& s, const SystemParams& params)
{
    return rates_for(ch.gains(s.theta), s.alpha, s.p, params);
}

Subgradients subgradients(const ComputeSolution& s, const Eigen::VectorXd& E, const ChannelSet& ch,
                          const SystemParams& params)
{
    Subgradients sg;
    const Eigen::VectorXd b = budgets(E, params);
    sg.s_lambda = -slacks(b, s.f, s.alpha, s.p, params);
    const Eigen::VectorXd r = required_rates(params, offload_volume(params, s.f));
    sg.s_mu = r - offload_rates(ch, s, params);
    return sg;
}

double lagrangian(const ComputeSolution& s, const Eigen::VectorXd& E, const DualState& dual, const ChannelSet& ch,
                  const SystemParams& params)
{
    const Eigen::VectorXd b = budgets(E, params);
    const Eigen::VectorXd r = required_rates(params, offload_volume(params, s.f));
    const Eigen::VectorXd R = offload_rates(ch, s, params);
    double L = 0.0;
    for (int k = 0; k < params.K; ++k) {
        const double use = params.kappa * s.f[k] * s.f[k] + usage(s.alpha.row(k), s.p.row(k), params);
        L += s.zeta[k] - dual.lambda[k] * (use + s.zeta[k] - b[k]) + dual.mu[k] * (R[k] - r[k]);
    }
    return L;
}

Eigen::VectorXd min_power_waterfill(const Eigen::VectorXd& gains, double rate, const SystemParams& params)
{
    Waterfill w = waterfill_to_rate(gains, rate, params);
    return w.ok ? w.p : Eigen::VectorXd();
}

DualResult dual_loop(const ChannelSet& ch, const IrsVector& theta, const Eigen::VectorXd& f, const Eigen::VectorXd& E,
                     const SystemParams& params, const DualState* dual0)
{
    const int K = params.K;
    const int M = params.M;
    const Eigen::VectorXd r = required_rates(params, offload_volume(params, f));
    const Eigen::VectorXd b = budgets(E, params);
    const Eigen::MatrixXd G = ch.gains(theta);

    DualResult res;
    res.alpha = Eigen::MatrixXi::Zero(K, M);
    res.p = Eigen::MatrixXd::Zero(K, M);
    std::vector<int> active;
    for (int k = 0; k < K; ++k)
        if (r[k] > 0.0)
            active.push_back(k);

    if (active.empty()) {
        res.zeta = slacks(b, f, res.alpha, res.p, params);
        res.status = energy_ok(res.zeta, b) ? DualStatus::ok : DualStatus::energy_infeasible;
        return res;
    }

    DualState dual;
    if (dual0 != nullptr && dual0->lambda.size() == K && dual0->mu.size() == K) {
        dual = *dual0;
    } else {
        dual.lambda = Eigen::VectorXd::Ones(K);
        dual.mu = Eigen::VectorXd::Zero(K);
        dual.delta_lambda1 = params.delta_lambda1;
        dual.delta_mu1 = params.delta_mu1;
        dual.t = 1;
        // water level of each device's stand-alone minimum-usage allocation
        // raised, if needed, until every band of that allocation scores positive
        for (int k : active) {
            const Waterfill w = best_subset(G.row(k).transpose(), r[k], params);
            if (!(w.ok && w.level > 0.0)) {
                dual.mu[k] = 1.0;
                continue;
            }
            double level = w.level;
            for (int m = 0; m < M; ++m)
                if (w.p[m] > 0.0)
                    level = std::max(level, positive_score_level(G(k, m), params));
            dual.mu[k] = level * kLn2 / params.B;
        }
    }
    Eigen::VectorXd room(K);
    for (int k = 0; k < K; ++k)
        room[k] = (b[k] - params.kappa * f[k] * f[k]) * (1.0 + 1e-12);
    const Eigen::VectorXd mu_ref = dual.mu.cwiseMax(std::numeric_limits<double>::min());

    double best_ok = -std::numeric_limits<double>::infinity();
    double best_any = -std::numeric_limits<double>::infinity();
    bool have_ok = false;
    bool have_any = false;
    double prev_L = std::numeric_limits<double>::quiet_NaN();

    for (int it = 0; it < params.dual_t_max; ++it) {
        // per-band maximization of the Lagrangian; a band whose best score is
        // not positive stays unassigned
        Eigen::MatrixXi alpha = Eigen::MatrixXi::Zero(K, M);
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(K, M);
        for (int m = 0; m < M; ++m) {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(K);
            DualState sub = dual;
            for (int k = 0; k < K; ++k)
                if (r[k] <= 0.0)
                    sub.mu[k] = 0.0;
            g = G.col(m);
            const Assignment a = assign_subband(m, sub, g, params);
            if (a.score > 0.0 && a.p > 0.0 && r[a.k] > 0.0) {
                alpha(a.k, m) = 1;
                p(a.k, m) = a.p;
            }
        }
        const Eigen::VectorXd zeta = slacks(b, f, alpha, p, params);
        const Eigen::VectorXd R = rates_for(G, alpha, p, params);
        double L = zeta.sum();
        for (int k : active)
            L += dual.mu[k] * (R[k] - r[k]);
        res.lagrangian.push_back(L);

        // complete the association with minimum-usage water-filling
        bool complete = true;
        Eigen::MatrixXi a2 = Eigen::MatrixXi::Zero(K, M);
        Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(K, M);
        for (int k : active) {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(M);
            for (int m = 0; m < M; ++m)
                if (alpha(k, m) != 0)
                    g[m] = G(k, m);
            const Waterfill w = best_subset(g, r[k], params);
            if (!w.ok || !(w.p.maxCoeff() > 0.0)) {
                complete = false;
                break;
            }
            for (int m = 0; m < M; ++m)
                if (w.p[m] > 0.0) {
                    a2(k, m) = 1;
                    p2(k, m) = w.p[m];
                }
        }
        if (complete) {
            improve_association(G, r, room, a2, p2, params);
            const Eigen::VectorXd z2 = slacks(b, f, a2, p2, params);
            const double val = z2.sum();
            const bool ok = energy_ok(z2, b);
            if (ok && val > best_ok) {
                best_ok = val;
                have_ok = true;
                res.alpha = a2;
                res.p = p2;
                res.zeta = z2;
            }
            if (!have_ok && val > best_any) {
                best_any = val;
                have_any = true;
                res.alpha = a2;
                res.p = p2;
                res.zeta = z2;
            }
        }

        if (log::enabled(log::Level::debug)) {
            std::string msg = "dual t=" + std::to_string(dual.t) + " L=" + std::to_string(L) + (complete ? " complete" : "");
            for (int k : active)
                msg += " | k" + std::to_string(k) + " bands " + std::to_string(alpha.row(k).sum()) + " mu " +
                       std::to_string(dual.mu[k] / mu_ref[k]) + " R/r " + std::to_string(R[k] / r[k]) + " lam " +
                       std::to_string(dual.lambda[k]);
            log::debug(msg);
        }

        // projected subgradient step, normalized per device
        const double dl = dual.delta_lambda1 / dual.t;
        const double dm = dual.delta_mu1 / dual.t;
        for (int k : active) {
            const double scale = std::max(b[k], params.p_c + std::numeric_limits<double>::min());
            dual.lambda[k] = std::max(1.0, dual.lambda[k] + dl * (-zeta[k]) / scale);
            dual.mu[k] = std::max(0.0, dual.mu[k] + dm * mu_ref[k] * (r[k] - R[k]) / r[k]);
        }
        ++dual.t;
        res.iterations = it + 1;

        // budgets and local computing are constants; test convergence on the rest
        double L_var = L;
        for (int k = 0; k < K; ++k)
            L_var -= b[k] - params.kappa * f[k] * f[k];
        if (have_ok && it > 0 && relative_change(L_var, prev_L) <= params.eps)
            break;
        prev_L = L_var;
    }

    res.dual = dual;
    if (have_ok)
        res.status = DualStatus::ok;
    else if (have_any)
        res.status = DualStatus::energy_infeasible;
    else {
        res.status = DualStatus::rate_infeasible;
        res.zeta = slacks(b, f, res.alpha, res.p, params);
    }
    return res;
}

ScaResult sca_theta_i(const ChannelSet& ch, const Eigen::MatrixXi& alpha, const Eigen::MatrixXd& p,
                      const Eigen::VectorXd& f, const IrsVector& theta_init, const SystemParams& params)
{
    const int K = params.K;
    const int M = params.M;
    const int N = ch.N();
    const double nf = params.noise_floor();
    const Eigen::VectorXd r = required_rates(params, offload_volume(params, f));

    ScaResult res;
    res.theta = theta_init;

    std::vector<int> active;
    for (int k = 0; k < K; ++k)
        if (r[k] > 0.0 && (alpha.row(k).array() != 0).any())
            active.push_back(k);

    auto rate_slack = [&](const IrsVector& th) {
        const Eigen::VectorXd R = rates_for(ch.gains(th), alpha, p, params);
        Eigen::VectorXd s(static_cast<Eigen::Index>(active.size()));
        for (std::size_t i = 0; i < active.size(); ++i)
            s[static_cast<Eigen::Index>(i)] = R[active[i]] - r[active[i]];
        return s;
    };

    {
        const Eigen::VectorXd s0 = rate_slack(theta_init);
        res.trace.push_back(s0.size() ? s0.cwiseMax(0.0).sum() : 0.0);
    }
    if (N == 0 || active.empty())
        return res;

    struct Pair {
        int k;
        int m;
        int chi;  // index of the device's slack variable
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < active.size(); ++i)
        for (int m = 0; m < M; ++m)
            if (alpha(active[i], m) != 0 && p(active[i], m) > 0.0)
                pairs.push_back({active[i], m, static_cast<int>(i)});

    const int A = static_cast<int>(active.size());
    const int P = static_cast<int>(pairs.size());
    const int nv = 2 * N + A + P;
    const int chi0 = 2 * N;
    const int s0 = 2 * N + A;

    for (int it = 0; it < params.t_max; ++it) {
        solver::ConeProblem prob(nv);
        for (int i = 0; i < A; ++i) {
            prob.objective[chi0 + i] = -1.0;
            prob.set_lower(chi0 + i, 0.0);
        }
        // per-device rate rows, in bit/s/Hz:
        //   chi_k + sum_m w_m s_m <= sum_m (ln(1+x0) + w_m) / ln2 - r_k / B
        // with w_m = x0 / ((1 + x0) ln 2) and s_m x_m' >= 1
        std::vector<Eigen::RowVectorXd> rows(static_cast<std::size_t>(A), Eigen::RowVectorXd::Zero(nv));
        std::vector<double> rhs(static_cast<std::size_t>(A), 0.0);
        for (int i = 0; i < A; ++i) {
            rows[static_cast<std::size_t>(i)][chi0 + i] = 1.0;
            rhs[static_cast<std::size_t>(i)] = -r[active[static_cast<std::size_t>(i)]] / params.B;
        }
        bool degenerate = false;
        for (int j = 0; j < P; ++j) {
            const Pair& pr = pairs[static_cast<std::size_t>(j)];
            const cplx c0 = ch.cfr(pr.k, pr.m, res.theta);
            const double y0 = std::norm(c0);
            if (!(y0 > 0.0)) {
                degenerate = true;
                break;
            }
            const double x0 = p(pr.k, pr.m) * y0 / nf;
            const auto lm = detail::linearize(ch, pr.k, pr.m, c0);
            const double w = x0 / ((1.0 + x0) * kLn2);
            rows[static_cast<std::size_t>(pr.chi)][s0 + j] = w;
            rhs[static_cast<std::size_t>(pr.chi)] += std::log1p(x0) / kLn2 + w;

            // x' = (const + grad theta) / y0, rotated cone ||(2, s - x')|| <= s + x'
            solver::SocBlock blk;
            blk.A = Eigen::MatrixXd::Zero(2, nv);
            blk.b = Eigen::VectorXd::Zero(2);
            blk.c = Eigen::VectorXd::Zero(nv);
            blk.b[0] = 2.0;
            blk.A(1, s0 + j) = 1.0;
            blk.A.row(1).head(2 * N) = -lm.grad / y0;
            blk.b[1] = -lm.constant / y0;
            blk.c[s0 + j] = 1.0;
            blk.c.head(2 * N) = lm.grad.transpose() / y0;
            blk.d = lm.constant / y0;
            prob.add_soc(std::move(blk));
        }
        if (degenerate)
            break;
        for (int i = 0; i < A; ++i)
            prob.add_inequality(rows[static_cast<std::size_t>(i)], rhs[static_cast<std::size_t>(i)]);
        detail::add_unit_disk_constraints(prob, N);

        const auto sol = solver::solve_socp(prob);
        if (sol.status != solver::Status::optimal) {
            log::warn(std::string("offload SCA subproblem ended with status ") + solver::to_string(sol.status));
            res.solver_ok = false;
            break;
        }
        const IrsVector cand = detail::theta_from(sol.x, N);
        const Eigen::VectorXd slack = rate_slack(cand);
        const double value = -sol.primal_objective * params.B;
        const double prev = res.trace.back();
        const double tol = 1e-9 * std::max(r.maxCoeff(), 1.0);
        if (slack.minCoeff() < -tol || value < prev - tol) {
            log::debug("offload SCA: candidate rejected");
            break;
        }
        res.theta = cand;
        res.trace.push_back(std::max(value, prev));
        if (relative_change(res.trace.back(), prev) <= params.eps)
            break;
    }
    return res;
}

Eigen::VectorXd update_frequencies(const Eigen::VectorXd& E, const Eigen::MatrixXi& alpha, const Eigen::MatrixXd& p,
                                   const Eigen::VectorXd& zeta, const SystemParams& params)
{
    const Eigen::VectorXd b = budgets(E, params);
    Eigen::VectorXd f(params.K);
    const double cap = params.kappa * params.f_max * params.f_max;
    for (int k = 0; k < params.K; ++k) {
        // a hair below the budget keeps kappa f^2 on the feasible side after rounding
        const double room = (b[k] - usage(alpha.row(k), p.row(k), params) - zeta[k]) * (1.0 - 1e-12);
        if (room < 0.0)
            f[k] = 0.0;
        else if (room < cap)
            f[k] = std::sqrt(room / params.kappa);
        else
            f[k] = params.f_max;
    }
    return f;
}

ComputingResult optimize_computing(const ChannelSet& ch, const WetSolution& wet, const ComputeSolution& current,
                                   const SystemParams& params, bool skip_sca)
{
    const int K = params.K;
    Eigen::VectorXd E(K);
    for (int k = 0; k < K; ++k)
        E[k] = harvested_energy(ch, params.tau, wet.p, wet.theta, k, params);
    const Eigen::VectorXd b = budgets(E, params);

    ComputingResult out;
    ComputeSolution s = current;
    s.ell = offload_volume(params, s.f);
    s.zeta = slacks(b, s.f, s.alpha, s.p, params);
    out.trace.push_back(params.vartheta * s.ell.sum());

    const Eigen::VectorXd no_slack = Eigen::VectorXd::Zero(K);
    Eigen::VectorXd f_need(K);
    for (int k = 0; k < K; ++k)
        f_need[k] = params.L[k] * params.c[k] / params.compute_time();
    const DualState* warm = nullptr;

    auto allocate_and_raise_f = [&]() {
        DualResult d = dual_loop(ch, s.theta, s.f, E, params, warm);
        if (d.status == DualStatus::ok) {
            const Eigen::VectorXd zc = slacks(b, s.f, d.alpha, d.p, params);
            if (energy_ok(zc, b) && zc.sum() > s.zeta.sum()) {
                s.alpha = d.alpha;
                s.p = d.p;
            }
        }
        out.dual_runs.push_back(std::move(d));
        // frequencies only grow: the incumbent fits the budget at the old f
        const Eigen::VectorXd f_new = update_frequencies(E, s.alpha, s.p, no_slack, params);
        // cycles beyond the whole task only cost energy
        s.f = f_new.cwiseMax(s.f).cwiseMin(f_need);
        s.ell = offload_volume(params, s.f);
        s.zeta = slacks(b, s.f, s.alpha, s.p, params);
        return params.vartheta * s.ell.sum();
    };

    double obj = allocate_and_raise_f();
    out.trace.push_back(obj);

    for (int it = 0; it < params.t_max; ++it) {
        if (!skip_sca && ch.N() > 0) {
            ScaResult sca = sca_theta_i(ch, s.alpha, s.p, s.f, s.theta, params);
            s.theta = sca.theta;
            out.sca_runs.push_back(std::move(sca));
        }
        const double prev = obj;
        obj = allocate_and_raise_f();
        out.trace.push_back(obj);
        if (relative_change(obj, prev) <= params.eps)
            break;
    }
    out.solution = std::move(s);
    return out;
}

}  // namespace irsmec
