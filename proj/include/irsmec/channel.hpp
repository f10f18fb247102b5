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

#include "irsmec/params.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace irsmec {

using cplx = std::complex<double>;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

// HAP at the origin, IRS on the x-axis at the cell edge (R, 0), device circle
// centered at (d1, 0).
struct Geometry {
    Point hap;
    Point irs;
    Point center;
    std::vector<Point> devices;
};

// IRS reflection coefficients, |theta_n| <= 1 (within kTolerance).
class IrsVector {
public:
    static constexpr double kTolerance = 1e-9;

    IrsVector() = default;
    // Throws std::invalid_argument when an entry leaves the unit disk.
    explicit IrsVector(Eigen::VectorXcd coeffs);

    static IrsVector zeros(int n);
    // Uniform phases in [0, 2pi); amplitudes 1 or uniform in [0, 1].
    static IrsVector random(int n, std::mt19937_64& rng, bool unit_amplitude);
    // Radially scales entries that sit outside the unit disk back onto it.
    static IrsVector projected(Eigen::VectorXcd coeffs);

    int size() const { return static_cast<int>(theta_.size()); }
    const Eigen::VectorXcd& coeffs() const { return theta_; }
    cplx operator[](int n) const { return theta_[n]; }
    double max_modulus() const;

private:
    Eigen::VectorXcd theta_;
};

// Time-domain channels of every device plus the per-device DFT-domain caches
// used by the optimizers. Immutable after construction.
class ChannelSet {
public:
    ChannelSet() = default;
    // h_d: K vectors of length M. V: K matrices of size M x N.
    ChannelSet(std::vector<Eigen::VectorXcd> h_d, std::vector<Eigen::MatrixXcd> V);

    int K() const { return static_cast<int>(h_d_.size()); }
    int M() const { return M_; }
    int N() const { return N_; }

    const Eigen::VectorXcd& direct_cir(int k) const;
    const Eigen::MatrixXcd& reflection(int k) const;
    const Eigen::MatrixXcd& dft() const { return dft_; }

    // f_m^H h_d[k] for all m.
    const Eigen::VectorXcd& direct_cfr(int k) const;
    // Rows f_m^H V_k, an M x N matrix.
    const Eigen::MatrixXcd& cascaded_cfr(int k) const;

    cplx cfr(int k, int m, const IrsVector& theta) const;
    Eigen::VectorXcd cfr_row(int k, const IrsVector& theta) const;
    // K x M matrix of |C_{k,m}(theta)|^2.
    Eigen::MatrixXd gains(const IrsVector& theta) const;

    // Same direct links, reflected path removed (N = 0).
    ChannelSet without_reflection() const;

private:
    void check_index(int k) const;

    int M_ = 0;
    int N_ = 0;
    std::vector<Eigen::VectorXcd> h_d_;
    std::vector<Eigen::MatrixXcd> V_;
    Eigen::MatrixXcd dft_;
    std::vector<Eigen::VectorXcd> direct_cfr_;
    std::vector<Eigen::MatrixXcd> cascaded_cfr_;
};

// Unnormalized M-point DFT, entry (m, l) = exp(-j 2 pi m l / M).
Eigen::MatrixXcd dft_matrix(int M);

Geometry sample_geometry(const SystemParams& params, std::mt19937_64& rng);

// Linear power gain 10^(-(PL0 + 10 beta log10(d/d0)) / 10). Throws
// std::domain_error for d < d0.
double path_loss_gain(double d, double beta, const SystemParams& params);

// i.i.d. CN(0, gain / num_taps) taps, so E||h||^2 = gain.
Eigen::VectorXcd sample_cir(int num_taps, double gain, std::mt19937_64& rng);

// Linear convolution r * g zero-padded to length M. Throws
// std::length_error if it does not fit.
Eigen::VectorXcd compose_reflection(const Eigen::VectorXcd& r, const Eigen::VectorXcd& g, int M);

// Draws every CIR from per-device / per-element sub-streams of `seed`.
ChannelSet build_channels(const SystemParams& params, const Geometry& geometry, std::uint64_t seed);

}  // namespace irsmec
