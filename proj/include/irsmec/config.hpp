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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irsmec {

// One `key = value` line of a configuration file.
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// Splits flat key=value text. '#' starts a comment; blank lines are skipped.
// Throws std::invalid_argument("line N: ...") on malformed lines.
std::vector<ConfigEntry> parse_config_text(std::string_view text);

// Reads and splits a file; throws std::runtime_error naming the path when it
// cannot be opened.
std::vector<ConfigEntry> read_config_file(const std::string& path);

// Parses a number with an optional unit suffix ("10 ms", "312.5kHz",
// "1.24e-12 mW", "15 Kbit") and returns it in SI units. The suffix must
// belong to `dimension` ("power", "time", "frequency", "bits", "length",
// "energy", "" for dimensionless). Throws std::invalid_argument.
double parse_quantity(std::string_view text, std::string_view dimension);

// True when `key` names a SystemParams field accepted by set_param.
bool is_param_key(std::string_view key);

// Applies one setting. "beta" sets beta_ui and beta_ia together; "L" and "c"
// take comma-separated per-device lists and pin the task draw. Changing K
// resets the per-device vectors. Throws std::invalid_argument for unknown
// keys or bad values.
void set_param(SystemParams& params, std::string_view key, std::string_view value);

// Applies every entry in order, then derives the missing one of d1/d2 from R
// when only one was given, and validates.
void apply_params(SystemParams& params, const std::vector<ConfigEntry>& entries);

}  // namespace irsmec
