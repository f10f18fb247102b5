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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irsmec {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// ----------------------------------------------------------------------------
// IrsVector

IrsVector::IrsVector(Eigen::VectorXcd coeffs) : theta_(std::move(coeffs))
{
    for (Eigen::Index n = 0; n < theta_.size(); ++n) {
        if (!(std::abs(theta_[n]) <= 1.0 + kTolerance))
            throw std::invalid_argument("IRS coefficient " + std::to_string(n) + " outside the unit disk");
    }
}

IrsVector IrsVector::zeros(int n) { return IrsVector(Eigen::VectorXcd::Zero(n)); }

IrsVector IrsVector::random(int n, std::mt19937_64& rng, bool unit_amplitude)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) {
        const double amp = unit_amplitude ? 1.0 : unit(rng);
        const double phase = 2.0 * std::numbers::pi * unit(rng);
        v[i] = std::polar(amp, phase);
    }
    return IrsVector(std::move(v));
}

IrsVector IrsVector::projected(Eigen::VectorXcd coeffs)
{
    for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
        const double a = std::abs(coeffs[n]);
        if (a > 1.0)
            coeffs[n] /= a;
    }
    return IrsVector(std::move(coeffs));
}

double IrsVector::max_modulus() const
{
    return theta_.size() == 0 ? 0.0 : theta_.cwiseAbs().maxCoeff();
}

// ----------------------------------------------------------------------------
// ChannelSet

Eigen::MatrixXcd dft_matrix(int M)
{
    Eigen::MatrixXcd F(M, M);
    for (int m = 0; m < M; ++m) {
        for (int l = 0; l < M; ++l) {
            // reduce the exponent first so large M keeps full phase accuracy
            const long idx = (static_cast<long>(m) * l) % M;
            F(m, l) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(idx) / M);
        }
    }
    return F;
}

ChannelSet::ChannelSet(std::vector<Eigen::VectorXcd> h_d, std::vector<Eigen::MatrixXcd> V)
    : h_d_(std::move(h_d)), V_(std::move(V))
{
    if (h_d_.empty())
        throw std::invalid_argument("ChannelSet needs at least one device");
    if (h_d_.size() != V_.size())
        throw std::invalid_argument("ChannelSet: h_d and V device counts differ");
    M_ = static_cast<int>(h_d_.front().size());
    N_ = static_cast<int>(V_.front().cols());
    if (M_ < 1)
        throw std::invalid_argument("ChannelSet: M must be >= 1");
    for (std::size_t k = 0; k < h_d_.size(); ++k) {
        if (h_d_[k].size() != M_ || V_[k].rows() != M_ || V_[k].cols() != N_)
            throw std::invalid_argument("ChannelSet: inconsistent dimensions for device " + std::to_string(k));
    }
    dft_ = dft_matrix(M_);
    direct_cfr_.reserve(h_d_.size());
    cascaded_cfr_.reserve(h_d_.size());
    for (std::size_t k = 0; k < h_d_.size(); ++k) {
        direct_cfr_.push_back(dft_ * h_d_[k]);
        cascaded_cfr_.push_back(dft_ * V_[k]);
    }
}

void ChannelSet::check_index(int k) const
{
    if (k < 0 || k >= K())
        throw std::out_of_range("device index " + std::to_string(k) + " out of range");
}

const Eigen::VectorXcd& ChannelSet::direct_cir(int k) const
{
    check_index(k);
    return h_d_[k];
}

const Eigen::MatrixXcd& ChannelSet::reflection(int k) const
{
    check_index(k);
    return V_[k];
}

const Eigen::VectorXcd& ChannelSet::direct_cfr(int k) const
{
    check_index(k);
    return direct_cfr_[k];
}

const Eigen::MatrixXcd& ChannelSet::cascaded_cfr(int k) const
{
    check_index(k);
    return cascaded_cfr_[k];
}

cplx ChannelSet::cfr(int k, int m, const IrsVector& theta) const
{
    check_index(k);
    if (m < 0 || m >= M_)
        throw std::out_of_range("sub-band index " + std::to_string(m) + " out of range");
    if (theta.size() != N_)
        throw std::invalid_argument("IRS vector length does not match N");
    cplx v = direct_cfr_[k][m];
    if (N_ > 0)
        v += cascaded_cfr_[k].row(m).transpose().cwiseProduct(theta.coeffs()).sum();
    return v;
}

Eigen::VectorXcd ChannelSet::cfr_row(int k, const IrsVector& theta) const
{
    check_index(k);
    if (theta.size() != N_)
        throw std::invalid_argument("IRS vector length does not match N");
    if (N_ == 0)
        return direct_cfr_[k];
    return direct_cfr_[k] + cascaded_cfr_[k] * theta.coeffs();
}

Eigen::MatrixXd ChannelSet::gains(const IrsVector& theta) const
{
    Eigen::MatrixXd g(K(), M_);
    for (int k = 0; k < K(); ++k)
        g.row(k) = cfr_row(k, theta).cwiseAbs2().transpose();
    return g;
}

ChannelSet ChannelSet::without_reflection() const
{
    std::vector<Eigen::MatrixXcd> empty(h_d_.size(), Eigen::MatrixXcd(M_, 0));
    return ChannelSet(h_d_, std::move(empty));
}

// ----------------------------------------------------------------------------
// Synthesis

Geometry sample_geometry(const SystemParams& params, std::mt19937_64& rng)
{
    Geometry g;
    g.hap = {0.0, 0.0};
    g.irs = {params.R, 0.0};
    g.center = {params.d1, 0.0};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    g.devices.reserve(static_cast<std::size_t>(params.K));
    for (int k = 0; k < params.K; ++k) {
        const double rho = params.r * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        g.devices.push_back({g.center.x + rho * std::cos(phi), g.center.y + rho * std::sin(phi)});
    }
    return g;
}

double path_loss_gain(double d, double beta, const SystemParams& params)
{
    if (!(d >= params.d0))
        throw std::domain_error("path_loss_gain: distance below the reference distance");
    const double pl_db = params.PL0_dB + 10.0 * beta * std::log10(d / params.d0);
    return std::pow(10.0, -pl_db / 10.0);
}

Eigen::VectorXcd sample_cir(int num_taps, double gain, std::mt19937_64& rng)
{
    if (num_taps < 1)
        throw std::invalid_argument("sample_cir: num_taps must be >= 1");
    if (!(gain > 0.0))
        throw std::invalid_argument("sample_cir: gain must be > 0");
    std::normal_distribution<double> normal(0.0, std::sqrt(gain / (2.0 * num_taps)));
    Eigen::VectorXcd h(num_taps);
    for (int l = 0; l < num_taps; ++l) {
        const double re = normal(rng);
        const double im = normal(rng);
        h[l] = {re, im};
    }
    return h;
}

Eigen::VectorXcd compose_reflection(const Eigen::VectorXcd& r, const Eigen::VectorXcd& g, int M)
{
    if (r.size() == 0 || g.size() == 0)
        throw std::invalid_argument("compose_reflection: empty tap vector");
    const Eigen::Index len = r.size() + g.size() - 1;
    if (len > M)
        throw std::length_error("compose_reflection: convolution longer than M");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(M);
    for (Eigen::Index i = 0; i < r.size(); ++i)
        for (Eigen::Index j = 0; j < g.size(); ++j)
            v[i + j] += r[i] * g[j];
    return v;
}

ChannelSet build_channels(const SystemParams& params, const Geometry& geometry, std::uint64_t seed)
{
    const int K = params.K;
    const int M = params.M;
    const int N = params.N;
    if (static_cast<int>(geometry.devices.size()) != K)
        throw std::invalid_argument("build_channels: geometry has the wrong device count");
    if (std::max(params.Ld, params.L1 + params.L2 - 1) > M)
        throw std::invalid_argument("build_channels: delay spread exceeds the cyclic prefix");

    // Far-field IRS: one reference point for all elements. Links shorter than
    // d0 are evaluated at d0.
    auto gain_at = [&](double d, double beta) { return path_loss_gain(std::max(d, params.d0), beta, params); };

    const double gain_ia = gain_at(distance(geometry.irs, geometry.hap), params.beta_ia);
    std::vector<Eigen::VectorXcd> g_taps;
    g_taps.reserve(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        auto rng = make_stream(seed, stream::irs_hap_base + static_cast<std::uint64_t>(n));
        g_taps.push_back(sample_cir(params.L1, gain_ia, rng));
    }

    std::vector<Eigen::VectorXcd> h_d;
    std::vector<Eigen::MatrixXcd> V;
    h_d.reserve(static_cast<std::size_t>(K));
    V.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const Point dev = geometry.devices[k];
        auto rng_d = make_stream(seed, stream::direct_base + static_cast<std::uint64_t>(k));
        Eigen::VectorXcd hd = Eigen::VectorXcd::Zero(M);
        hd.head(params.Ld) = sample_cir(params.Ld, gain_at(distance(dev, geometry.hap), params.beta_ua), rng_d);
        h_d.push_back(std::move(hd));

        const double gain_ui = gain_at(distance(dev, geometry.irs), params.beta_ui);
        Eigen::MatrixXcd Vk(M, N);
        for (int n = 0; n < N; ++n) {
            auto rng_r = make_stream(seed, stream::device_irs_base + static_cast<std::uint64_t>(k) * stream::device_irs_stride +
                                               static_cast<std::uint64_t>(n));
            Vk.col(n) = compose_reflection(sample_cir(params.L2, gain_ui, rng_r), g_taps[n], M);
        }
        V.push_back(std::move(Vk));
    }
    return ChannelSet(std::move(h_d), std::move(V));
}

}  // namespace irsmec
