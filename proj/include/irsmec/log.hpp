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

#include <string_view>

namespace irsmec::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold is read once from IRSMEC_LOG (0..3 or error/warn/info/debug);
// defaults to warn.
Level threshold();
void set_threshold(Level level);
bool enabled(Level level);
void write(Level level, std::string_view message);

inline void warn(std::string_view m) { write(Level::warn, m); }
inline void info(std::string_view m) { write(Level::info, m); }
inline void debug(std::string_view m) { write(Level::debug, m); }

}  // namespace irsmec::log
