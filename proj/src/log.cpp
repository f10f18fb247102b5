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

#include "irsmec/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace irsmec::log {

namespace {

Level parse_env()
{
    const char* v = std::getenv("IRSMEC_LOG");
    if (v == nullptr)
        return Level::warn;
    const std::string s(v);
    if (s == "0" || s == "error") return Level::error;
    if (s == "1" || s == "warn") return Level::warn;
    if (s == "2" || s == "info") return Level::info;
    if (s == "3" || s == "debug") return Level::debug;
    return Level::warn;
}

std::atomic<int>& current()
{
    static std::atomic<int> level{static_cast<int>(parse_env())};
    return level;
}

std::mutex& sink_mutex()
{
    static std::mutex m;
    return m;
}

constexpr const char* tag(Level l)
{
    switch (l) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
    }
    return "?";
}

}  // namespace

Level threshold() { return static_cast<Level>(current().load()); }

void set_threshold(Level level) { current().store(static_cast<int>(level)); }

bool enabled(Level level) { return static_cast<int>(level) <= current().load(); }

void write(Level level, std::string_view message)
{
    if (!enabled(level))
        return;
    std::lock_guard<std::mutex> lock(sink_mutex());
    std::cerr << "[irsmec " << tag(level) << "] " << message << '\n';
}

}  // namespace irsmec::log
