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

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace irsmec::solver {

// ||A x + b||_2 <= c' x + d, cone dimension A.rows() + 1 >= 2.
struct SocBlock {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    double d = 0.0;
};

// minimize objective' x
//   s.t. A_eq x = b_eq, G x <= h, every SOC block, lower <= x <= upper.
// Empty bound vectors mean "unbounded"; infinite entries are skipped.
struct ConeProblem {
    Eigen::VectorXd objective;
    Eigen::MatrixXd A_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd G;
    Eigen::VectorXd h;
    std::vector<SocBlock> soc;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    explicit ConeProblem(int num_vars = 0);

    int num_vars() const { return static_cast<int>(objective.size()); }

    void add_equality(const Eigen::RowVectorXd& row, double rhs);
    void add_inequality(const Eigen::RowVectorXd& row, double rhs);
    void add_soc(SocBlock block);
    void set_lower(int j, double v);
    void set_upper(int j, double v);

    // Throws std::invalid_argument on inconsistent dimensions.
    void validate() const;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status s);

struct KktResiduals {
    double stationarity = 0.0;
    double primal = 0.0;
    double complementarity = 0.0;
    double max() const;
};

struct Solution {
    Status status = Status::iteration_limit;
    Eigen::VectorXd x;
    Eigen::VectorXd y;                    // equality multipliers
    Eigen::VectorXd z_linear;             // G rows, then finite lower bounds, then finite upper bounds
    std::vector<Eigen::VectorXd> z_soc;   // one per SOC block
    double primal_objective = std::numeric_limits<double>::quiet_NaN();
    double dual_objective = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    KktResiduals residuals;
};

struct Options {
    double feastol = 1e-9;
    double abstol = 1e-10;
    double reltol = 1e-9;
    int max_iterations = 100;
    // Accept a stalled iterate as optimal when every relative residual is
    // below this looser threshold.
    double reduced_tol = 1e-7;
};

// Homogeneous self-dual primal-dual interior-point method with Nesterov-Todd
// scaling and Mehrotra predictor-corrector steps. Infeasibility and
// unboundedness are reported from the certificates of the embedding
// (tau -> 0, kappa > 0).
Solution solve_socp(const ConeProblem& problem, const Options& options = {});

// Same code path; rejects problems that carry SOC blocks.
Solution solve_lp(const ConeProblem& problem, const Options& options = {});

// Relative residuals of the optimality conditions recomputed from raw data:
// stationarity ||c + A'y + G'z||_inf / (1 + ||c||_inf), primal violation
// scaled by 1 + max(||b||_inf, ||h||_inf), and |s'z| scaled by 1 + |c'x|.
KktResiduals check_kkt(const ConeProblem& problem, const Solution& solution);

// Plain-text canonical dump for offline inspection.
std::string dump(const ConeProblem& problem);

}  // namespace irsmec::solver
