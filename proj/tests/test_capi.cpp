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

// Exercises the shared library through its C header only.
#include "irsmec/irsmec.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const char* what, int line)
{
    if (!ok) {
        ++failures;
        std::fprintf(stderr, "test_capi.cpp:%d: check failed: %s (last error: %s)\n", line, what, irsmec_last_error());
    }
}

#define EXPECT(cond) expect((cond), #cond, __LINE__)

}  // namespace

int main()
{
    EXPECT(std::strlen(irsmec_version()) > 0);
    EXPECT(irsmec_params_create(nullptr) == IRSMEC_ERR_INVALID_ARGUMENT);
    EXPECT(std::strlen(irsmec_last_error()) > 0);

    irsmec_params* params = nullptr;
    EXPECT(irsmec_params_create(&params) == IRSMEC_OK);
    EXPECT(std::strlen(irsmec_last_error()) == 0);
    EXPECT(irsmec_params_set(params, "N", "8") == IRSMEC_OK);
    EXPECT(irsmec_params_set(params, "T", "10 ms") == IRSMEC_OK);
    EXPECT(irsmec_params_set(params, "nonsense", "1") == IRSMEC_ERR_INVALID_ARGUMENT);
    EXPECT(irsmec_params_set(params, "N", "eight") == IRSMEC_ERR_PARSE);
    EXPECT(irsmec_params_set(params, "T", "10 mW") == IRSMEC_ERR_PARSE);
    EXPECT(irsmec_params_set(params, nullptr, "1") == IRSMEC_ERR_INVALID_ARGUMENT);
    EXPECT(irsmec_params_load_file(params, "/nonexistent/irsmec.cfg") == IRSMEC_ERR_IO);
    {
        std::ofstream os("capi_bad.cfg");
        os << "tau = 0.1\nthis line is broken\n";
    }
    EXPECT(irsmec_params_load_file(params, "capi_bad.cfg") == IRSMEC_ERR_PARSE);
    EXPECT(std::strstr(irsmec_last_error(), "line 2") != nullptr);
    {
        std::ofstream os("capi_good.cfg");
        os << "# small instance\ntau = 0.2\n";
    }
    EXPECT(irsmec_params_load_file(params, "capi_good.cfg") == IRSMEC_OK);
    std::remove("capi_bad.cfg");
    std::remove("capi_good.cfg");

    irsmec_records* recs = nullptr;
    EXPECT(irsmec_run_scheme(params, "with-irs,without-irs", 2, 3, 1, &recs) == IRSMEC_OK);
    EXPECT(irsmec_records_count(recs) == 4);
    irsmec_record r;
    EXPECT(irsmec_records_get(recs, 0, &r) == IRSMEC_OK);
    EXPECT(std::strcmp(r.scheme, "with-irs") == 0);
    EXPECT(r.seed == 3);
    EXPECT(std::strcmp(r.param, "tau") == 0);
    EXPECT(r.value == 0.2);
    EXPECT(r.status == IRSMEC_RECORD_OK);
    EXPECT(std::abs(r.total_j - (r.wet_j + r.edge_j)) <= 1e-9 * r.total_j);
    EXPECT(irsmec_records_get(recs, 3, &r) == IRSMEC_OK);
    EXPECT(std::strcmp(r.scheme, "without-irs") == 0);
    EXPECT(r.seed == 4);
    EXPECT(irsmec_records_get(recs, 4, &r) == IRSMEC_ERR_INVALID_ARGUMENT);
    EXPECT(irsmec_write_report(recs, "capi_out") == IRSMEC_OK);
    {
        std::ifstream in("capi_out/records.csv");
        std::string header;
        std::getline(in, header);
        EXPECT(header == "scheme,seed,param,value,total_J,wet_J,edge_J,iters,ms");
    }
    irsmec_records_destroy(recs);

    const double taus[] = {0.1, 0.3};
    recs = nullptr;
    EXPECT(irsmec_sweep(params, "rand-phase", "tau", taus, 2, 1, 1, 0, &recs) == IRSMEC_OK);
    EXPECT(irsmec_records_count(recs) == 2);
    EXPECT(irsmec_records_get(recs, 1, &r) == IRSMEC_OK);
    EXPECT(r.value == 0.3);
    irsmec_records_destroy(recs);

    recs = nullptr;
    EXPECT(irsmec_sweep(params, "with-irs", "K", taus, 2, 1, 1, 0, &recs) == IRSMEC_ERR_INVALID_ARGUMENT);
    EXPECT(recs == nullptr);
    EXPECT(irsmec_run_scheme(params, "best-scheme", 1, 1, 0, &recs) == IRSMEC_ERR_INVALID_ARGUMENT);
    EXPECT(irsmec_run_scheme(params, "with-irs", 0, 1, 0, &recs) == IRSMEC_ERR_INVALID_ARGUMENT);

    // a batch where nothing can be harvested
    EXPECT(irsmec_params_set(params, "eta", "0") == IRSMEC_OK);
    recs = nullptr;
    EXPECT(irsmec_run_scheme(params, "with-irs", 1, 1, 0, &recs) == IRSMEC_ERR_INFEASIBLE);
    EXPECT(irsmec_records_count(recs) == 1);
    EXPECT(irsmec_records_get(recs, 0, &r) == IRSMEC_OK);
    EXPECT(r.status == IRSMEC_RECORD_INFEASIBLE);
    EXPECT(std::isnan(r.total_j));
    EXPECT(std::strlen(r.message) > 0);
    irsmec_records_destroy(recs);

    irsmec_records_destroy(nullptr);
    irsmec_params_destroy(params);
    irsmec_params_destroy(nullptr);

    std::printf("%s: %d failure(s)\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
