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

/* C interface to the IRS-aided wireless-powered MEC energy minimizer. */
#ifndef IRSMEC_IRSMEC_H
#define IRSMEC_IRSMEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(IRSMEC_BUILDING_LIBRARY)
#define IRSMEC_API __attribute__((visibility("default")))
#else
#define IRSMEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irsmec_status {
    IRSMEC_OK = 0,
    IRSMEC_ERR_INVALID_ARGUMENT = 1,
    IRSMEC_ERR_PARSE = 2,
    IRSMEC_ERR_IO = 3,
    IRSMEC_ERR_INFEASIBLE = 4,
    IRSMEC_ERR_INTERNAL = 5
} irsmec_status;

typedef struct irsmec_params irsmec_params;
typedef struct irsmec_records irsmec_records;

/* Record status values. */
#define IRSMEC_RECORD_OK 0
#define IRSMEC_RECORD_INFEASIBLE 1
#define IRSMEC_RECORD_ERROR 2

/* Borrowed view of one run record. The strings stay valid until the owning
 * irsmec_records is destroyed. Energies are NaN unless status is OK. */
typedef struct irsmec_record {
    const char* scheme;
    uint64_t seed;
    const char* param;
    double value;
    double total_j;
    double wet_j;
    double edge_j;
    int iterations;
    double ms;
    int status;
    const char* message;
} irsmec_record;

IRSMEC_API const char* irsmec_version(void);

/* Message for the last failing call on this thread ("" when none). */
IRSMEC_API const char* irsmec_last_error(void);

/* Parameter set holding the default values. */
IRSMEC_API irsmec_status irsmec_params_create(irsmec_params** out);
IRSMEC_API void irsmec_params_destroy(irsmec_params* params);

/* value accepts unit suffixes, e.g. ("T", "10 ms") or ("p_c", "1e-4 mW"). */
IRSMEC_API irsmec_status irsmec_params_set(irsmec_params* params, const char* key, const char* value);

/* Applies a key=value file on top of the current values. */
IRSMEC_API irsmec_status irsmec_params_load_file(irsmec_params* params, const char* path);

/* schemes: comma-separated list of with-irs, rand-phase, without-irs.
 * threads = 0 uses every hardware thread. Returns IRSMEC_ERR_INFEASIBLE
 * (with the records still set) when no trial succeeded. */
IRSMEC_API irsmec_status irsmec_run_scheme(const irsmec_params* params, const char* schemes, int trials,
                                           uint64_t seed, int threads, irsmec_records** out);

/* name: N, d1, beta, vartheta or tau. */
IRSMEC_API irsmec_status irsmec_sweep(const irsmec_params* params, const char* schemes, const char* name,
                                      const double* values, size_t count, int trials, uint64_t seed, int threads,
                                      irsmec_records** out);

IRSMEC_API size_t irsmec_records_count(const irsmec_records* records);
IRSMEC_API irsmec_status irsmec_records_get(const irsmec_records* records, size_t index, irsmec_record* out);

/* Writes records.csv and one plot_<param>.csv per parameter into dir. */
IRSMEC_API irsmec_status irsmec_write_report(const irsmec_records* records, const char* dir);

IRSMEC_API void irsmec_records_destroy(irsmec_records* records);

#ifdef __cplusplus
}
#endif

#endif
