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

#include "irsmec/solver.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace irsmec::solver {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ----------------------------------------------------------------------------
// Stacked cone data: G x + s = h, s in R+^l x Q^{q_1} x ... x Q^{q_k}.

struct Cone {
    int l = 0;
    std::vector<int> q;
    std::vector<int> offset;  // first row of each SOC block
    int m = 0;
    int degree() const { return l + static_cast<int>(q.size()); }
};

struct Canonical {
    Eigen::VectorXd c;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::MatrixXd G;
    Eigen::VectorXd h;
    Cone cone;
    int n_ineq = 0;  // rows taken from the explicit G
    std::vector<int> lower_idx;
    std::vector<int> upper_idx;
    // nonzero columns per cone block (linear rows are one block each)
    std::vector<std::vector<int>> block_cols;
};

Canonical canonicalize(const ConeProblem& p)
{
    p.validate();
    Canonical k;
    const int n = p.num_vars();
    k.c = p.objective;
    k.A = p.A_eq.rows() > 0 ? p.A_eq : Eigen::MatrixXd(0, n);
    k.b = p.A_eq.rows() > 0 ? p.b_eq : Eigen::VectorXd(0);

    for (int j = 0; j < p.lower.size(); ++j)
        if (std::isfinite(p.lower[j]))
            k.lower_idx.push_back(j);
    for (int j = 0; j < p.upper.size(); ++j)
        if (std::isfinite(p.upper[j]))
            k.upper_idx.push_back(j);

    k.n_ineq = static_cast<int>(p.G.rows());
    k.cone.l = k.n_ineq + static_cast<int>(k.lower_idx.size() + k.upper_idx.size());
    int m = k.cone.l;
    for (const auto& blk : p.soc) {
        k.cone.offset.push_back(m);
        k.cone.q.push_back(static_cast<int>(blk.A.rows()) + 1);
        m += static_cast<int>(blk.A.rows()) + 1;
    }
    k.cone.m = m;

    k.G = Eigen::MatrixXd::Zero(m, n);
    k.h = Eigen::VectorXd::Zero(m);
    int row = 0;
    if (k.n_ineq > 0) {
        k.G.topRows(k.n_ineq) = p.G;
        k.h.head(k.n_ineq) = p.h;
        row = k.n_ineq;
    }
    for (int j : k.lower_idx) {
        k.G(row, j) = -1.0;
        k.h[row++] = -p.lower[j];
    }
    for (int j : k.upper_idx) {
        k.G(row, j) = 1.0;
        k.h[row++] = p.upper[j];
    }
    for (const auto& blk : p.soc) {
        const int q = static_cast<int>(blk.A.rows()) + 1;
        k.G.row(row) = -blk.c.transpose();
        k.h[row] = blk.d;
        k.G.block(row + 1, 0, q - 1, n) = -blk.A;
        k.h.segment(row + 1, q - 1) = blk.b;
        row += q;
    }

    auto cols_of = [&](int r0, int rows) {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if (k.G.block(r0, j, rows, 1).cwiseAbs().maxCoeff() > 0.0)
                cols.push_back(j);
        return cols;
    };
    for (int i = 0; i < k.cone.l; ++i)
        k.block_cols.push_back(cols_of(i, 1));
    for (std::size_t b = 0; b < k.cone.q.size(); ++b)
        k.block_cols.push_back(cols_of(k.cone.offset[b], k.cone.q[b]));
    return k;
}

// ----------------------------------------------------------------------------
// Cone algebra

double jdot(const Eigen::Ref<const Eigen::VectorXd>& u, const Eigen::Ref<const Eigen::VectorXd>& v)
{
    return u[0] * v[0] - u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

// u0^2 - ||u1||^2 without cancellation
double jnorm2(const Eigen::Ref<const Eigen::VectorXd>& u)
{
    const double t = u.tail(u.size() - 1).norm();
    return (u[0] - t) * (u[0] + t);
}

Eigen::VectorXd identity(const Cone& cone)
{
    Eigen::VectorXd e = Eigen::VectorXd::Zero(cone.m);
    e.head(cone.l).setOnes();
    for (int off : cone.offset)
        e[off] = 1.0;
    return e;
}

// Smallest t with u + t e in the closed cone.
double max_infeasibility(const Cone& cone, const Eigen::VectorXd& u)
{
    double t = -kInf;
    if (cone.l > 0)
        t = -u.head(cone.l).minCoeff();
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const auto seg = u.segment(cone.offset[b], cone.q[b]);
        t = std::max(t, seg.tail(seg.size() - 1).norm() - seg[0]);
    }
    return t;
}

Eigen::VectorXd jprod(const Cone& cone, const Eigen::VectorXd& u, const Eigen::VectorXd& v)
{
    Eigen::VectorXd r(cone.m);
    r.head(cone.l) = u.head(cone.l).cwiseProduct(v.head(cone.l));
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const int o = cone.offset[b];
        const int q = cone.q[b];
        const auto us = u.segment(o, q);
        const auto vs = v.segment(o, q);
        r[o] = us.dot(vs);
        r.segment(o + 1, q - 1) = us[0] * vs.tail(q - 1) + vs[0] * us.tail(q - 1);
    }
    return r;
}

// x with lambda o x = d.
Eigen::VectorXd jdiv(const Cone& cone, const Eigen::VectorXd& lambda, const Eigen::VectorXd& d)
{
    Eigen::VectorXd x(cone.m);
    x.head(cone.l) = d.head(cone.l).cwiseQuotient(lambda.head(cone.l));
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const int o = cone.offset[b];
        const int q = cone.q[b];
        const auto l = lambda.segment(o, q);
        const auto ds = d.segment(o, q);
        const double det = jnorm2(l);
        const double x0 = (l[0] * ds[0] - l.tail(q - 1).dot(ds.tail(q - 1))) / det;
        x[o] = x0;
        x.segment(o + 1, q - 1) = (ds.tail(q - 1) - x0 * l.tail(q - 1)) / l[0];
    }
    return x;
}

// Largest alpha with lambda + alpha * d in the cone (lambda interior).
double max_step(const Cone& cone, const Eigen::VectorXd& lambda, const Eigen::VectorXd& d)
{
    double alpha = kInf;
    for (int i = 0; i < cone.l; ++i)
        if (d[i] < 0.0)
            alpha = std::min(alpha, -lambda[i] / d[i]);
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const int o = cone.offset[b];
        const int q = cone.q[b];
        const auto l = lambda.segment(o, q);
        const auto ds = d.segment(o, q);
        // (l0 + a d0)^2 - ||l1 + a d1||^2 = qa a^2 + 2 qb a + qc
        const double qa = jnorm2(ds);
        const double qb = jdot(l, ds);
        const double qc = jnorm2(l);
        double root = kInf;
        if (qa == 0.0) {
            if (qb < 0.0)
                root = -qc / (2.0 * qb);
        } else {
            const double disc = qb * qb - qa * qc;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                const double t = -(qb + std::copysign(sq, qb));
                for (double r : {t / qa, t != 0.0 ? qc / t : kInf})
                    if (r > 0.0)
                        root = std::min(root, r);
            }
        }
        // also stay on the positive sheet
        if (ds[0] < 0.0)
            root = std::min(root, -l[0] / ds[0]);
        alpha = std::min(alpha, root);
    }
    return alpha;
}

// ----------------------------------------------------------------------------
// Nesterov-Todd scaling W: W z = W^{-1} s = lambda.

struct Scaling {
    Eigen::VectorXd d;                // linear part: sqrt(s / z)
    std::vector<double> beta;         // SOC: sqrt(sn / zn)
    std::vector<Eigen::VectorXd> w;   // SOC: normalized point, w' J w = 1
};

Scaling identity_scaling(const Cone& cone)
{
    Scaling sc;
    sc.d = Eigen::VectorXd::Ones(cone.l);
    for (int q : cone.q) {
        sc.beta.push_back(1.0);
        Eigen::VectorXd w = Eigen::VectorXd::Zero(q);
        w[0] = 1.0;
        sc.w.push_back(std::move(w));
    }
    return sc;
}

bool compute_scaling(const Cone& cone, const Eigen::VectorXd& s, const Eigen::VectorXd& z, Scaling& sc)
{
    sc.d.resize(cone.l);
    for (int i = 0; i < cone.l; ++i) {
        if (!(s[i] > 0.0 && z[i] > 0.0))
            return false;
        sc.d[i] = std::sqrt(s[i] / z[i]);
    }
    sc.beta.assign(cone.q.size(), 1.0);
    sc.w.resize(cone.q.size());
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const int o = cone.offset[b];
        const int q = cone.q[b];
        const auto ss = s.segment(o, q);
        const auto zs = z.segment(o, q);
        const double s2 = jnorm2(ss);
        const double z2 = jnorm2(zs);
        if (!(s2 > 0.0 && z2 > 0.0 && ss[0] > 0.0 && zs[0] > 0.0))
            return false;
        const double sn = std::sqrt(s2);
        const double zn = std::sqrt(z2);
        const Eigen::VectorXd sb = ss / sn;
        const Eigen::VectorXd zb = zs / zn;
        const double gamma = std::sqrt(0.5 * (1.0 + sb.dot(zb)));
        Eigen::VectorXd w(q);
        w[0] = (sb[0] + zb[0]) / (2.0 * gamma);
        w.tail(q - 1) = (sb.tail(q - 1) - zb.tail(q - 1)) / (2.0 * gamma);
        sc.beta[b] = std::sqrt(sn / zn);
        sc.w[b] = std::move(w);
    }
    return true;
}

// W v (inverse = false) or W^{-1} v (inverse = true).
Eigen::VectorXd apply_w(const Cone& cone, const Scaling& sc, const Eigen::VectorXd& v, bool inverse)
{
    Eigen::VectorXd r(cone.m);
    if (inverse)
        r.head(cone.l) = v.head(cone.l).cwiseQuotient(sc.d);
    else
        r.head(cone.l) = v.head(cone.l).cwiseProduct(sc.d);
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const int o = cone.offset[b];
        const int q = cone.q[b];
        const auto& w = sc.w[b];
        const auto vs = v.segment(o, q);
        const double sign = inverse ? -1.0 : 1.0;
        const double w1v1 = w.tail(q - 1).dot(vs.tail(q - 1));
        const double scale = inverse ? 1.0 / sc.beta[b] : sc.beta[b];
        r[o] = scale * (w[0] * vs[0] + sign * w1v1);
        r.segment(o + 1, q - 1) =
            scale * (sign * vs[0] * w.tail(q - 1) + vs.tail(q - 1) + (w1v1 / (1.0 + w[0])) * w.tail(q - 1));
    }
    return r;
}

Eigen::VectorXd apply_w2(const Cone& cone, const Scaling& sc, const Eigen::VectorXd& v, bool inverse)
{
    return apply_w(cone, sc, apply_w(cone, sc, v, inverse), inverse);
}

// ----------------------------------------------------------------------------
// KKT system
//   [ 0  A'  G'  ] [x]   [bx]
//   [ A  0   0   ] [y] = [by]
//   [ G  0  -W^2 ] [z]   [bz]
// reduced to [G'W^{-2}G  A'; A  0] by eliminating z.

class Kkt {
public:
    Kkt(const Canonical& k) : k_(k) {}

    bool factor(const Scaling& sc)
    {
        sc_ = &sc;
        const int n = static_cast<int>(k_.c.size());
        const int p = static_cast<int>(k_.b.size());
        const Cone& cone = k_.cone;
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < cone.l; ++i) {
            const auto& cols = k_.block_cols[i];
            const double wi = 1.0 / (sc.d[i] * sc.d[i]);
            for (int a : cols)
                for (int b : cols)
                    H(a, b) += wi * k_.G(i, a) * k_.G(i, b);
        }
        for (std::size_t bl = 0; bl < cone.q.size(); ++bl) {
            const auto& cols = k_.block_cols[cone.l + bl];
            if (cols.empty())
                continue;
            const int o = cone.offset[bl];
            const int q = cone.q[bl];
            Eigen::MatrixXd Gb(q, cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j)
                Gb.col(j) = k_.G.block(o, cols[j], q, 1);
            // W^{-2} = (2 u u' - J) / beta^2, u = J w
            Eigen::VectorXd u = sc.w[bl];
            u.tail(q - 1) *= -1.0;
            const double ib2 = 1.0 / (sc.beta[bl] * sc.beta[bl]);
            const Eigen::RowVectorXd uG = u.transpose() * Gb;
            Eigen::MatrixXd JG = -Gb;
            JG.row(0) *= -1.0;
            const Eigen::MatrixXd Hb = ib2 * (2.0 * uG.transpose() * uG - Gb.transpose() * JG);
            for (std::size_t a = 0; a < cols.size(); ++a)
                for (std::size_t b = 0; b < cols.size(); ++b)
                    H(cols[a], cols[b]) += Hb(a, b);
        }
        const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
        delta_ = 1e-14 * scale;
        Eigen::MatrixXd K(n + p, n + p);
        K.topLeftCorner(n, n) = H + delta_ * Eigen::MatrixXd::Identity(n, n);
        K.topRightCorner(n, p) = k_.A.transpose();
        K.bottomLeftCorner(p, n) = k_.A;
        K.bottomRightCorner(p, p) = -delta_ * Eigen::MatrixXd::Identity(p, p);
        lu_.compute(K);
        return std::isfinite(lu_.matrixLU().cwiseAbs().maxCoeff());
    }

    void solve(const Eigen::VectorXd& bx, const Eigen::VectorXd& by, const Eigen::VectorXd& bz, Eigen::VectorXd& x,
               Eigen::VectorXd& y, Eigen::VectorXd& z) const
    {
        solve_once(bx, by, bz, x, y, z);
        const double ref = 1.0 + std::max({bx.lpNorm<Eigen::Infinity>(), by.size() ? by.lpNorm<Eigen::Infinity>() : 0.0,
                                          bz.size() ? bz.lpNorm<Eigen::Infinity>() : 0.0});
        for (int it = 0; it < 6; ++it) {
            const Eigen::VectorXd ex = bx - k_.A.transpose() * y - k_.G.transpose() * z;
            const Eigen::VectorXd ey = by - k_.A * x;
            const Eigen::VectorXd ez = bz - k_.G * x + apply_w2(k_.cone, *sc_, z, false);
            const double err = std::max({ex.size() ? ex.lpNorm<Eigen::Infinity>() : 0.0,
                                         ey.size() ? ey.lpNorm<Eigen::Infinity>() : 0.0,
                                         ez.size() ? ez.lpNorm<Eigen::Infinity>() : 0.0});
            if (!(err > 1e-14 * ref))
                break;
            Eigen::VectorXd dx, dy, dz;
            solve_once(ex, ey, ez, dx, dy, dz);
            x += dx;
            y += dy;
            z += dz;
        }
    }

private:
    void solve_once(const Eigen::VectorXd& bx, const Eigen::VectorXd& by, const Eigen::VectorXd& bz, Eigen::VectorXd& x,
                    Eigen::VectorXd& y, Eigen::VectorXd& z) const
    {
        const int n = static_cast<int>(k_.c.size());
        const int p = static_cast<int>(k_.b.size());
        Eigen::VectorXd rhs(n + p);
        rhs.head(n) = bx + k_.G.transpose() * apply_w2(k_.cone, *sc_, bz, true);
        rhs.tail(p) = by;
        const Eigen::VectorXd sol = lu_.solve(rhs);
        x = sol.head(n);
        y = sol.tail(p);
        z = apply_w2(k_.cone, *sc_, k_.G * x - bz, true);
    }

    const Canonical& k_;
    const Scaling* sc_ = nullptr;
    double delta_ = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

double norm2(const Eigen::VectorXd& v) { return v.size() ? v.norm() : 0.0; }

void unpack_duals(const Canonical& k, const Eigen::VectorXd& y, const Eigen::VectorXd& z, Solution& sol)
{
    sol.y = y;
    sol.z_linear = z.head(k.cone.l);
    sol.z_soc.clear();
    for (std::size_t b = 0; b < k.cone.q.size(); ++b)
        sol.z_soc.push_back(z.segment(k.cone.offset[b], k.cone.q[b]));
}

Eigen::VectorXd pack_duals(const Canonical& k, const Solution& sol)
{
    Eigen::VectorXd z = Eigen::VectorXd::Zero(k.cone.m);
    if (sol.z_linear.size() == k.cone.l)
        z.head(k.cone.l) = sol.z_linear;
    for (std::size_t b = 0; b < k.cone.q.size() && b < sol.z_soc.size(); ++b)
        if (sol.z_soc[b].size() == k.cone.q[b])
            z.segment(k.cone.offset[b], k.cone.q[b]) = sol.z_soc[b];
    return z;
}

Solution solve_impl(const ConeProblem& problem, const Options& opt)
{
    const Canonical k = canonicalize(problem);
    const Cone& cone = k.cone;
    const int n = static_cast<int>(k.c.size());
    const int p = static_cast<int>(k.b.size());
    const Eigen::VectorXd e = identity(cone);

    Solution sol;
    Kkt kkt(k);
    Scaling sc = identity_scaling(cone);
    if (!kkt.factor(sc)) {
        sol.status = Status::iteration_limit;
        sol.x = Eigen::VectorXd::Zero(n);
        return sol;
    }

    // Least-squares starting points, shifted into the cone interior.
    Eigen::VectorXd x, y, z, s;
    {
        Eigen::VectorXd zz;
        kkt.solve(Eigen::VectorXd::Zero(n), k.b, k.h, x, y, zz);
        s = -zz;
        Eigen::VectorXd xx;
        kkt.solve(-k.c, Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(cone.m), xx, y, z);
    }
    if (cone.m > 0) {
        const double ts = max_infeasibility(cone, s);
        const double tz = max_infeasibility(cone, z);
        if (ts >= -1e-8 * std::max(norm2(s), 1.0))
            s += (1.0 + ts) * e;
        if (tz >= -1e-8 * std::max(norm2(z), 1.0))
            z += (1.0 + tz) * e;
    }
    double tau = 1.0;
    double kappa = 1.0;

    const double resx0 = std::max(1.0, norm2(k.c));
    const double resy0 = std::max(1.0, norm2(k.b));
    const double resz0 = std::max(1.0, norm2(k.h));
    const int degree = cone.degree();

    double pres = kInf, dres = kInf, gap_n = kInf, relgap = kInf;
    bool done = false;
    // Late iterates can lose accuracy in the KKT solves; the best one seen
    // is what gets reported when the run stalls.
    struct Iterate {
        Eigen::VectorXd x, y, z, s;
        double tau = 1.0, kappa = 1.0, pres = kInf, dres = kInf, gap = kInf, relgap = kInf, merit = kInf;
    } best;
    int worse = 0;
    int it = 0;
    for (; it <= opt.max_iterations; ++it) {
        const double cx = k.c.dot(x);
        const double by = p ? k.b.dot(y) : 0.0;
        const double hz = cone.m ? k.h.dot(z) : 0.0;
        const Eigen::VectorXd hrx = k.A.transpose() * y + k.G.transpose() * z;
        const Eigen::VectorXd hry = k.A * x;
        const Eigen::VectorXd hrz = k.G * x + s;
        const Eigen::VectorXd rx = hrx + tau * k.c;
        const Eigen::VectorXd ry = hry - tau * k.b;
        const Eigen::VectorXd rz = hrz - tau * k.h;
        const double rt = kappa + cx + by + hz;
        const double sz = cone.m ? s.dot(z) : 0.0;

        pres = std::max(norm2(ry) / resy0, norm2(rz) / resz0) / tau;
        dres = norm2(rx) / resx0 / tau;
        const double pcost = cx / tau;
        const double dcost = -(by + hz) / tau;
        gap_n = sz / (tau * tau);
        relgap = pcost < 0.0 ? gap_n / -pcost : (dcost > 0.0 ? gap_n / dcost : kInf);
        const double pinfres = (hz + by < 0.0) ? norm2(hrx) / resx0 / -(hz + by) : kInf;
        const double dinfres =
            (cx < 0.0) ? std::max(norm2(hry) / resy0, norm2(hrz) / resz0) / -cx : kInf;

        const double merit = std::max({pres, dres, std::min(gap_n, relgap)});
        if (merit < best.merit) {
            best = {x, y, z, s, tau, kappa, pres, dres, gap_n, relgap, merit};
            worse = 0;
        } else if (best.merit <= opt.reduced_tol && merit > 1e3 * best.merit && ++worse >= 3) {
            break;
        }
        if (pres <= opt.feastol && dres <= opt.feastol && (gap_n <= opt.abstol || relgap <= opt.reltol)) {
            sol.status = Status::optimal;
            done = true;
            break;
        }
        if (pinfres <= opt.feastol) {
            sol.status = Status::infeasible;
            const double scale = -(hz + by);
            sol.x = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
            unpack_duals(k, y / scale, z / scale, sol);
            sol.iterations = it;
            return sol;
        }
        if (dinfres <= opt.feastol) {
            sol.status = Status::unbounded;
            sol.x = x / -cx;
            unpack_duals(k, Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(cone.m), sol);
            sol.iterations = it;
            return sol;
        }
        if (it == opt.max_iterations)
            break;

        if (!compute_scaling(cone, s, z, sc) || !kkt.factor(sc))
            break;
        const Eigen::VectorXd lambda = apply_w(cone, sc, z, false);
        const double mu = (sz + tau * kappa) / (degree + 1);

        Eigen::VectorXd u1x, u1y, u1z;
        kkt.solve(-k.c, k.b, k.h, u1x, u1y, u1z);
        const double denom = -(apply_w(cone, sc, u1z, false).squaredNorm() + kappa / tau);

        const Eigen::VectorXd ll = jprod(cone, lambda, lambda);
        Eigen::VectorXd dsa_s, dza_s;
        double dtau_a = 0.0, dkappa_a = 0.0;
        double sigma = 0.0;
        double step = 0.0;
        Eigen::VectorXd dx, dy, dz, ds_scaled, dz_scaled;
        double dtau = 0.0, dkappa = 0.0;
        for (int phase = 0; phase < 2; ++phase) {
            Eigen::VectorXd ds = -ll;
            double dk = -tau * kappa;
            if (phase == 1) {
                ds += sigma * mu * e - jprod(cone, dsa_s, dza_s);
                dk += sigma * mu - dtau_a * dkappa_a;
            }
            const double f = 1.0 - sigma;
            const Eigen::VectorXd lds = jdiv(cone, lambda, ds);
            const Eigen::VectorXd bz = -f * rz - apply_w(cone, sc, lds, false);
            const double bt = -f * rt - dk / tau;
            Eigen::VectorXd u2x, u2y, u2z;
            kkt.solve(-f * rx, -f * ry, bz, u2x, u2y, u2z);
            dtau = (bt - k.c.dot(u2x) - (p ? k.b.dot(u2y) : 0.0) - (cone.m ? k.h.dot(u2z) : 0.0)) / denom;
            dx = u2x + dtau * u1x;
            dy = u2y + dtau * u1y;
            dz = u2z + dtau * u1z;
            dz_scaled = apply_w(cone, sc, dz, false);
            ds_scaled = lds - dz_scaled;
            dkappa = (dk - kappa * dtau) / tau;

            double amax = std::min(max_step(cone, lambda, ds_scaled), max_step(cone, lambda, dz_scaled));
            if (dtau < 0.0)
                amax = std::min(amax, -tau / dtau);
            if (dkappa < 0.0)
                amax = std::min(amax, -kappa / dkappa);
            if (phase == 0) {
                const double aa = std::min(1.0, amax);
                sigma = std::pow(1.0 - aa, 3);
                dsa_s = ds_scaled;
                dza_s = dz_scaled;
                dtau_a = dtau;
                dkappa_a = dkappa;
            } else {
                step = std::min(1.0, 0.99 * amax);
            }
        }
        if (!(step > 1e-13) || !dx.allFinite())
            break;
        x += step * dx;
        y += step * dy;
        z += step * dz;
        s += step * apply_w(cone, sc, ds_scaled, false);
        tau += step * dtau;
        kappa += step * dkappa;
    }

    if (!done) {
        if (best.x.size() == x.size()) {
            x = best.x;
            y = best.y;
            z = best.z;
            s = best.s;
            tau = best.tau;
            pres = best.pres;
            dres = best.dres;
            gap_n = best.gap;
            relgap = best.relgap;
        }
        const bool close = pres <= opt.reduced_tol && dres <= opt.reduced_tol &&
                           (gap_n <= std::sqrt(opt.abstol) * 1e-2 || relgap <= opt.reduced_tol);
        sol.status = close ? Status::optimal : Status::iteration_limit;
    }
    sol.iterations = std::min(it, opt.max_iterations);
    sol.x = x / tau;
    unpack_duals(k, y / tau, z / tau, sol);
    sol.primal_objective = k.c.dot(sol.x);
    sol.dual_objective = -((p ? k.b.dot(y) : 0.0) + (cone.m ? k.h.dot(z) : 0.0)) / tau;
    sol.residuals = check_kkt(problem, sol);
    return sol;
}

void append_row(std::ostringstream& os, const char* tag, const Eigen::Ref<const Eigen::RowVectorXd>& row, double rhs)
{
    char buf[64];
    os << tag;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        std::snprintf(buf, sizeof buf, " %.17g", row[j]);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, " | %.17g\n", rhs);
    os << buf;
}

}  // namespace

// ----------------------------------------------------------------------------

ConeProblem::ConeProblem(int num_vars)
    : objective(Eigen::VectorXd::Zero(num_vars)),
      A_eq(0, num_vars),
      b_eq(0),
      G(0, num_vars),
      h(0)
{
}

void ConeProblem::add_equality(const Eigen::RowVectorXd& row, double rhs)
{
    if (row.size() != num_vars())
        throw std::invalid_argument("add_equality: row length does not match the variable count");
    A_eq.conservativeResize(A_eq.rows() + 1, num_vars());
    A_eq.row(A_eq.rows() - 1) = row;
    b_eq.conservativeResize(b_eq.size() + 1);
    b_eq[b_eq.size() - 1] = rhs;
}

void ConeProblem::add_inequality(const Eigen::RowVectorXd& row, double rhs)
{
    if (row.size() != num_vars())
        throw std::invalid_argument("add_inequality: row length does not match the variable count");
    G.conservativeResize(G.rows() + 1, num_vars());
    G.row(G.rows() - 1) = row;
    h.conservativeResize(h.size() + 1);
    h[h.size() - 1] = rhs;
}

void ConeProblem::add_soc(SocBlock block)
{
    if (block.A.cols() != num_vars() || block.c.size() != num_vars() || block.b.size() != block.A.rows())
        throw std::invalid_argument("add_soc: block dimensions do not match the variable count");
    if (block.A.rows() < 1)
        throw std::invalid_argument("add_soc: cone dimension must be at least 2");
    soc.push_back(std::move(block));
}

void ConeProblem::set_lower(int j, double v)
{
    if (j < 0 || j >= num_vars())
        throw std::out_of_range("set_lower: variable index out of range");
    if (lower.size() != num_vars())
        lower = Eigen::VectorXd::Constant(num_vars(), -kInf);
    lower[j] = v;
}

void ConeProblem::set_upper(int j, double v)
{
    if (j < 0 || j >= num_vars())
        throw std::out_of_range("set_upper: variable index out of range");
    if (upper.size() != num_vars())
        upper = Eigen::VectorXd::Constant(num_vars(), kInf);
    upper[j] = v;
}

void ConeProblem::validate() const
{
    const Eigen::Index n = objective.size();
    if (n < 1)
        throw std::invalid_argument("ConeProblem: no variables");
    if (A_eq.rows() > 0 && (A_eq.cols() != n || b_eq.size() != A_eq.rows()))
        throw std::invalid_argument("ConeProblem: equality block has inconsistent dimensions");
    if (A_eq.rows() == 0 && b_eq.size() != 0)
        throw std::invalid_argument("ConeProblem: equality rhs without rows");
    if (G.rows() > 0 && (G.cols() != n || h.size() != G.rows()))
        throw std::invalid_argument("ConeProblem: inequality block has inconsistent dimensions");
    if (G.rows() == 0 && h.size() != 0)
        throw std::invalid_argument("ConeProblem: inequality rhs without rows");
    if (lower.size() != 0 && lower.size() != n)
        throw std::invalid_argument("ConeProblem: lower bound vector has the wrong length");
    if (upper.size() != 0 && upper.size() != n)
        throw std::invalid_argument("ConeProblem: upper bound vector has the wrong length");
    for (const auto& blk : soc) {
        if (blk.A.rows() < 1 || blk.A.cols() != n || blk.b.size() != blk.A.rows() || blk.c.size() != n)
            throw std::invalid_argument("ConeProblem: SOC block has inconsistent dimensions");
    }
    auto finite = [](const auto& m) { return m.size() == 0 || m.allFinite(); };
    bool ok = finite(objective) && finite(A_eq) && finite(b_eq) && finite(G) && finite(h);
    for (const auto& blk : soc)
        ok = ok && finite(blk.A) && finite(blk.b) && finite(blk.c) && std::isfinite(blk.d);
    if (!ok)
        throw std::invalid_argument("ConeProblem: non-finite problem data");
    for (Eigen::Index j = 0; j < lower.size(); ++j)
        if (std::isnan(lower[j]) || (upper.size() && lower[j] > upper[j]) || lower[j] == kInf)
            throw std::invalid_argument("ConeProblem: invalid variable bounds");
    for (Eigen::Index j = 0; j < upper.size(); ++j)
        if (std::isnan(upper[j]) || upper[j] == -kInf)
            throw std::invalid_argument("ConeProblem: invalid variable bounds");
}

const char* to_string(Status s)
{
    switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

double KktResiduals::max() const { return std::max({stationarity, primal, complementarity}); }

Solution solve_socp(const ConeProblem& problem, const Options& options) { return solve_impl(problem, options); }

Solution solve_lp(const ConeProblem& problem, const Options& options)
{
    if (!problem.soc.empty())
        throw std::invalid_argument("solve_lp: problem has SOC blocks");
    return solve_impl(problem, options);
}

KktResiduals check_kkt(const ConeProblem& problem, const Solution& solution)
{
    const Canonical k = canonicalize(problem);
    KktResiduals r;
    if (solution.x.size() != k.c.size() || !solution.x.allFinite()) {
        r.stationarity = r.primal = r.complementarity = kInf;
        return r;
    }
    const Eigen::VectorXd& x = solution.x;
    const Eigen::VectorXd y = solution.y.size() == k.b.size() ? solution.y : Eigen::VectorXd::Zero(k.b.size());
    const Eigen::VectorXd z = pack_duals(k, solution);
    const Cone& cone = k.cone;

    const Eigen::VectorXd grad = k.c + k.A.transpose() * y + k.G.transpose() * z;
    r.stationarity = (grad.size() ? grad.lpNorm<Eigen::Infinity>() : 0.0) / (1.0 + k.c.lpNorm<Eigen::Infinity>());

    double viol = 0.0;
    if (k.b.size())
        viol = (k.A * x - k.b).lpNorm<Eigen::Infinity>();
    const Eigen::VectorXd s = k.h - k.G * x;
    if (cone.l > 0)
        viol = std::max(viol, -std::min(0.0, s.head(cone.l).minCoeff()));
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const auto seg = s.segment(cone.offset[b], cone.q[b]);
        viol = std::max(viol, seg.tail(seg.size() - 1).norm() - seg[0]);
    }
    // dual cone membership counts as a primal-side violation of the certificate
    double dviol = 0.0;
    if (cone.l > 0)
        dviol = -std::min(0.0, z.head(cone.l).minCoeff());
    for (std::size_t b = 0; b < cone.q.size(); ++b) {
        const auto seg = z.segment(cone.offset[b], cone.q[b]);
        dviol = std::max(dviol, seg.tail(seg.size() - 1).norm() - seg[0]);
    }
    const double bscale =
        1.0 + std::max(k.b.size() ? k.b.lpNorm<Eigen::Infinity>() : 0.0, k.h.size() ? k.h.lpNorm<Eigen::Infinity>() : 0.0);
    r.primal = std::max(0.0, viol) / bscale;
    const double zinf = z.size() ? z.lpNorm<Eigen::Infinity>() : 0.0;
    r.stationarity = std::max(r.stationarity, dviol / (1.0 + zinf));
    r.complementarity = (cone.m ? std::abs(s.dot(z)) : 0.0) / (1.0 + std::abs(k.c.dot(x)));
    return r;
}

std::string dump(const ConeProblem& problem)
{
    problem.validate();
    std::ostringstream os;
    const int n = problem.num_vars();
    os << "irsmec-cone 1\n";
    os << "vars " << n << " eq " << problem.A_eq.rows() << " ineq " << problem.G.rows() << " soc "
       << problem.soc.size() << "\n";
    append_row(os, "obj", problem.objective.transpose(), 0.0);
    for (Eigen::Index i = 0; i < problem.A_eq.rows(); ++i)
        append_row(os, "eq", problem.A_eq.row(i), problem.b_eq[i]);
    for (Eigen::Index i = 0; i < problem.G.rows(); ++i)
        append_row(os, "le", problem.G.row(i), problem.h[i]);
    char buf[96];
    for (int j = 0; j < n; ++j) {
        const double lo = problem.lower.size() ? problem.lower[j] : -kInf;
        const double hi = problem.upper.size() ? problem.upper[j] : kInf;
        if (std::isfinite(lo) || std::isfinite(hi)) {
            std::snprintf(buf, sizeof buf, "bound %d %.17g %.17g\n", j, lo, hi);
            os << buf;
        }
    }
    for (std::size_t b = 0; b < problem.soc.size(); ++b) {
        const auto& blk = problem.soc[b];
        os << "soc " << b << " dim " << blk.A.rows() + 1 << "\n";
        append_row(os, " t", blk.c.transpose(), blk.d);
        for (Eigen::Index i = 0; i < blk.A.rows(); ++i)
            append_row(os, " u", blk.A.row(i), blk.b[i]);
    }
    return os.str();
}

}  // namespace irsmec::solver
