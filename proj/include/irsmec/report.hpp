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

#include "irsmec/experiment.hpp"

#include <string>
#include <vector>

namespace irsmec {

inline constexpr const char* kCsvHeader = "scheme,seed,param,value,total_J,wet_J,edge_J,iters,ms";

// One CSV line (no newline) with 17 significant digits; energies of
// non-ok records print as "nan".
std::string format_record(const RunRecord& record);

// Header plus one line per record, LF endings.
std::string records_to_csv(const std::vector<RunRecord>& records);

// Inverse of records_to_csv. Records with NaN energies come back as
// infeasible. Throws std::invalid_argument("line N: ...").
std::vector<RunRecord> parse_records_csv(const std::string& text);

// Wide plot table for one parameter: x, then <scheme>_mean,<scheme>_std for
// each scheme present.
std::string plot_table(const std::vector<RunRecord>& records, const std::string& param);

struct ReportFiles {
    std::string records;
    std::vector<std::string> plots;
};

// Writes <dir>/records.csv and <dir>/plot_<param>.csv for every parameter in
// the records, creating `dir` if needed. Throws std::invalid_argument for an
// empty record list and std::runtime_error naming the path on I/O failure.
ReportFiles emit_report(const std::vector<RunRecord>& records, const std::string& dir);

}  // namespace irsmec
