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

#include "irsmec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irsmec {

namespace {

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct Unit {
    std::string_view suffix;
    std::string_view dimension;
    double scale;
};

constexpr Unit kUnits[] = {
    {"W", "power", 1.0},       {"mW", "power", 1e-3},      {"uW", "power", 1e-6},    {"nW", "power", 1e-9},
    {"dBm", "power", 0.0},  // handled separately
    {"J", "energy", 1.0},      {"mJ", "energy", 1e-3},     {"uJ", "energy", 1e-6},
    {"s", "time", 1.0},        {"ms", "time", 1e-3},       {"us", "time", 1e-6},
    {"Hz", "frequency", 1.0},  {"kHz", "frequency", 1e3},  {"MHz", "frequency", 1e6}, {"GHz", "frequency", 1e9},
    {"bit", "bits", 1.0},      {"Kbit", "bits", 1e3},      {"kbit", "bits", 1e3},    {"Mbit", "bits", 1e6},
    {"m", "length", 1.0},      {"km", "length", 1e3},
};

enum class Kind { real, integer };

struct KeyInfo {
    std::string_view key;
    std::string_view dimension;
    Kind kind;
};

constexpr KeyInfo kKeys[] = {
    {"K", "", Kind::integer},          {"M", "", Kind::integer},          {"N", "", Kind::integer},
    {"T", "time", Kind::real},         {"tau", "", Kind::real},           {"R", "length", Kind::real},
    {"d1", "length", Kind::real},      {"d2", "length", Kind::real},      {"r", "length", Kind::real},
    {"eta", "", Kind::real},           {"B", "frequency", Kind::real},    {"PL0", "", Kind::real},
    {"d0", "length", Kind::real},      {"beta_ua", "", Kind::real},       {"beta_ui", "", Kind::real},
    {"beta_ia", "", Kind::real},       {"beta", "", Kind::real},          {"Ld", "", Kind::integer},
    {"L1", "", Kind::integer},         {"L2", "", Kind::integer},         {"sigma2", "power", Kind::real},
    {"Gamma", "", Kind::real},         {"L_min", "bits", Kind::real},     {"L_max", "bits", Kind::real},
    {"c_min", "", Kind::real},         {"c_max", "", Kind::real},         {"f_max", "frequency", Kind::real},
    {"kappa", "", Kind::real},         {"vartheta", "", Kind::real},      {"f_e", "frequency", Kind::real},
    {"p_c", "power", Kind::real},      {"eps", "", Kind::real},           {"t_max", "", Kind::integer},
    {"outer_t_max", "", Kind::integer}, {"dual_t_max", "", Kind::integer}, {"delta_lambda1", "", Kind::real},
    {"delta_mu1", "", Kind::real},     {"lambda_min", "", Kind::real},    {"L", "bits", Kind::real},
    {"c", "", Kind::real},
};

const KeyInfo* find_key(std::string_view key)
{
    for (const auto& k : kKeys)
        if (k.key == key)
            return &k;
    return nullptr;
}

std::vector<double> parse_list(std::string_view text, std::string_view dimension)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_quantity(text.substr(0, comma), dimension));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

int to_int(double v, std::string_view key)
{
    if (!(std::abs(v) < 1e9) || std::floor(v) != v)
        throw std::invalid_argument(std::string(key) + ": expected an integer");
    return static_cast<int>(v);
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(std::string_view text)
{
    std::vector<ConfigEntry> entries;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("line " + std::to_string(line_no) + ": empty key or value");
        entries.push_back({std::string(key), std::string(value), line_no});
    }
    return entries;
}

std::vector<ConfigEntry> read_config_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

double parse_quantity(std::string_view text, std::string_view dimension)
{
    text = trim(text);
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v))
        throw std::invalid_argument("'" + std::string(text) + "' is not a finite number");
    const auto suffix = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
    if (suffix.empty())
        return v;
    for (const auto& u : kUnits) {
        if (u.suffix != suffix)
            continue;
        if (u.dimension != dimension)
            throw std::invalid_argument("unit '" + std::string(suffix) + "' does not fit a " +
                                        (dimension.empty() ? std::string("dimensionless") : std::string(dimension)) +
                                        " quantity");
        if (u.suffix == "dBm")
            return 1e-3 * std::pow(10.0, v / 10.0);
        return v * u.scale;
    }
    throw std::invalid_argument("unknown unit '" + std::string(suffix) + "'");
}

bool is_param_key(std::string_view key) { return find_key(key) != nullptr; }

void set_param(SystemParams& p, std::string_view key, std::string_view value)
{
    const KeyInfo* info = find_key(key);
    if (info == nullptr)
        throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
    const std::string k(key);

    if (k == "L" || k == "c") {
        auto values = parse_list(value, info->dimension);
        if (static_cast<int>(values.size()) != p.K)
            throw std::invalid_argument(k + ": expected " + std::to_string(p.K) + " comma-separated values");
        (k == "L" ? p.L : p.c) = std::move(values);
        p.fixed_tasks = true;
        return;
    }

    double v = 0.0;
    try {
        v = parse_quantity(value, info->dimension);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(k + ": " + e.what());
    }

    if (info->kind == Kind::integer) {
        const int i = to_int(v, key);
        if (k == "K") {
            p.K = i;
            p.fixed_tasks = false;
            p.reset_tasks_to_midpoint();
        } else if (k == "M") p.M = i;
        else if (k == "N") p.N = i;
        else if (k == "Ld") p.Ld = i;
        else if (k == "L1") p.L1 = i;
        else if (k == "L2") p.L2 = i;
        else if (k == "t_max") p.t_max = i;
        else if (k == "outer_t_max") p.outer_t_max = i;
        else if (k == "dual_t_max") p.dual_t_max = i;
        return;
    }

    if (k == "T") p.T = v;
    else if (k == "tau") p.tau = v;
    else if (k == "R") p.R = v;
    else if (k == "d1") p.d1 = v;
    else if (k == "d2") p.d2 = v;
    else if (k == "r") p.r = v;
    else if (k == "eta") p.eta = v;
    else if (k == "B") p.B = v;
    else if (k == "PL0") p.PL0_dB = v;
    else if (k == "d0") p.d0 = v;
    else if (k == "beta_ua") p.beta_ua = v;
    else if (k == "beta_ui") p.beta_ui = v;
    else if (k == "beta_ia") p.beta_ia = v;
    else if (k == "beta") p.beta_ui = p.beta_ia = v;
    else if (k == "sigma2") p.sigma2 = v;
    else if (k == "Gamma") p.Gamma = v;
    else if (k == "L_min") p.L_min = v;
    else if (k == "L_max") p.L_max = v;
    else if (k == "c_min") p.c_min = v;
    else if (k == "c_max") p.c_max = v;
    else if (k == "f_max") p.f_max = v;
    else if (k == "kappa") p.kappa = v;
    else if (k == "vartheta") p.vartheta = v;
    else if (k == "f_e") p.f_e = v;
    else if (k == "p_c") p.p_c = v;
    else if (k == "eps") p.eps = v;
    else if (k == "delta_lambda1") p.delta_lambda1 = v;
    else if (k == "delta_mu1") p.delta_mu1 = v;
    else if (k == "lambda_min") p.lambda_min = v;
}

void apply_params(SystemParams& params, const std::vector<ConfigEntry>& entries)
{
    bool has_d1 = false;
    bool has_d2 = false;
    for (const auto& e : entries) {
        try {
            set_param(params, e.key, e.value);
        } catch (const std::invalid_argument& ex) {
            throw std::invalid_argument("line " + std::to_string(e.line) + ": " + ex.what());
        }
        has_d1 = has_d1 || e.key == "d1";
        has_d2 = has_d2 || e.key == "d2";
    }
    if (has_d1 && !has_d2)
        params.d2 = params.R - params.d1;
    else if (has_d2 && !has_d1)
        params.d1 = params.R - params.d2;
    params.validate();
}

}  // namespace irsmec
