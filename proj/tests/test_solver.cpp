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

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace irsmec::solver;

namespace {

Eigen::RowVectorXd row(std::initializer_list<double> v)
{
    Eigen::RowVectorXd r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        r[i++] = x;
    return r;
}

}  // namespace

TEST_CASE("single bound")
{
    ConeProblem p(1);
    p.objective << 1.0;
    p.set_lower(0, 3.0);
    const Solution s = solve_lp(p);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.x[0] == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("two-variable LP vertex")
{
    ConeProblem p(2);
    p.objective << 1.0, 1.0;
    p.add_inequality(row({-1.0, -2.0}), -4.0);
    p.set_lower(0, 0.0);
    p.set_lower(1, 0.0);
    const Solution s = solve_lp(p);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.x[0] == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(s.x[1] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(s.primal_objective == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(check_kkt(p, s).max() < 1e-8);
}

TEST_CASE("infeasible LP")
{
    ConeProblem p(1);
    p.objective << 1.0;
    p.add_inequality(row({1.0}), 0.0);
    p.add_inequality(row({-1.0}), -1.0);
    CHECK(solve_lp(p).status == Status::infeasible);
}

TEST_CASE("unbounded LP")
{
    ConeProblem p(1);
    p.objective << -1.0;
    p.set_lower(0, 0.0);
    CHECK(solve_lp(p).status == Status::unbounded);
}

TEST_CASE("equality constraints")
{
    ConeProblem p(3);
    p.objective << 1.0, 2.0, 3.0;
    p.add_equality(row({1.0, 1.0, 1.0}), 1.0);
    for (int j = 0; j < 3; ++j)
        p.set_lower(j, 0.0);
    const Solution s = solve_lp(p);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.primal_objective == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(check_kkt(p, s).max() < 1e-8);
}

TEST_CASE("unit disk SOCPs")
{
    ConeProblem p(2);
    p.objective << -1.0, 0.0;
    p.add_soc({Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 1.0});
    Solution s = solve_socp(p);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.x[0] == doctest::Approx(1.0).epsilon(1e-7));

    p.objective << -1.0, -1.0;
    s = solve_socp(p);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.x[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
    CHECK(s.x[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
    const KktResiduals r = check_kkt(p, s);
    CHECK(r.complementarity < 1e-7);
    CHECK(r.max() < 1e-6);
    CHECK(s.dual_objective <= s.primal_objective + 1e-9);
}

TEST_CASE("perturbed primal shows up in the residuals")
{
    ConeProblem p(2);
    p.objective << 1.0, 1.0;
    p.add_inequality(row({-1.0, -2.0}), -4.0);
    p.set_lower(0, 0.0);
    p.set_lower(1, 0.0);
    Solution s = solve_lp(p);
    s.x[1] -= 0.1;  // violates x + 2y >= 4 by 0.2
    CHECK(check_kkt(p, s).primal >= 0.039);
}

TEST_CASE("objective scaling leaves the argmin")
{
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        ConeProblem p(3);
        for (int j = 0; j < 3; ++j)
            p.objective[j] = n01(rng);
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                A(i, j) = n01(rng);
        p.add_soc({A, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3), 1.0});
        const Solution a = solve_socp(p);
        p.objective *= 10.0;
        const Solution b = solve_socp(p);
        REQUIRE(a.status == Status::optimal);
        REQUIRE(b.status == Status::optimal);
        CHECK((a.x - b.x).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("random LPs against vertex enumeration")
{
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n01(0.0, 1.0);
    int solved = 0;
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + t % 2;
        const int m = 4 + t % 4;
        ConeProblem p(n);
        Eigen::MatrixXd A(m + 2 * n, n);
        Eigen::VectorXd b(m + 2 * n);
        for (int j = 0; j < n; ++j)
            p.objective[j] = n01(rng);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j)
                A(i, j) = n01(rng);
            b[i] = std::abs(n01(rng)) + 0.1;  // origin strictly feasible
            p.add_inequality(A.row(i), b[i]);
        }
        // box keeps the problem bounded
        for (int j = 0; j < n; ++j) {
            p.set_lower(j, -5.0);
            p.set_upper(j, 5.0);
            A.row(m + 2 * j).setZero();
            A(m + 2 * j, j) = -1.0;
            b[m + 2 * j] = 5.0;
            A.row(m + 2 * j + 1).setZero();
            A(m + 2 * j + 1, j) = 1.0;
            b[m + 2 * j + 1] = 5.0;
        }
        const auto ref = oracle::lp_vertices(p.objective, A, b);
        const Solution s = solve_lp(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.primal_objective == doctest::Approx(ref.value).epsilon(1e-6));
        CHECK(check_kkt(p, s).max() < 1e-6);
        ++solved;
    }
    CHECK(solved == 40);
}

TEST_CASE("dimension checks")
{
    ConeProblem p(2);
    p.G = Eigen::MatrixXd::Zero(1, 3);
    p.h = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    ConeProblem q(2);
    q.add_soc({Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 1.0});
    CHECK_THROWS_AS(solve_lp(q), std::invalid_argument);
}

TEST_CASE("dump is canonical text")
{
    ConeProblem p(1);
    p.objective << 2.0;
    p.set_lower(0, 1.0);
    const std::string d = dump(p);
    CHECK_FALSE(d.empty());
    CHECK(d == dump(p));
}
