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

#include "irsmec/irsmec.h"

#include "irsmec/config.hpp"
#include "irsmec/experiment.hpp"
#include "irsmec/report.hpp"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

struct irsmec_params {
    std::vector<irsmec::ConfigEntry> entries;
    irsmec::SystemParams draft;  // entries applied without validation
};

struct irsmec_records {
    std::vector<irsmec::RunRecord> records;
    std::vector<std::string> scheme_names;
};

namespace {

thread_local std::string g_last_error;

irsmec_status fail(irsmec_status code, const std::string& message)
{
    g_last_error = message;
    return code;
}

irsmec_status ok()
{
    g_last_error.clear();
    return IRSMEC_OK;
}

// Maps exceptions escaping the core onto status codes.
template <typename F>
irsmec_status guarded(F&& body)
{
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(IRSMEC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(IRSMEC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(IRSMEC_ERR_INTERNAL, "unknown error");
    }
}

std::vector<irsmec::Scheme> parse_schemes(const char* text)
{
    std::vector<irsmec::Scheme> out;
    std::string_view s(text);
    while (true) {
        const auto comma = s.find(',');
        out.push_back(irsmec::parse_scheme(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

irsmec_status finish(std::vector<irsmec::RunRecord> records, irsmec_records** out)
{
    auto* handle = new irsmec_records;
    handle->records = std::move(records);
    for (const auto& r : handle->records)
        handle->scheme_names.emplace_back(irsmec::to_string(r.scheme));
    *out = handle;
    for (const auto& r : handle->records)
        if (r.status == irsmec::RecordStatus::ok)
            return ok();
    return fail(IRSMEC_ERR_INFEASIBLE, "no trial produced a feasible solution");
}

irsmec::ExperimentConfig make_config(const irsmec_params* params, const char* schemes, int trials, uint64_t seed,
                                     int threads)
{
    irsmec::ExperimentConfig cfg;
    irsmec::apply_params(cfg.params, params->entries);
    cfg.schemes = parse_schemes(schemes);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

extern "C" {

const char* irsmec_version(void) { return "0.1.0"; }

const char* irsmec_last_error(void) { return g_last_error.c_str(); }

irsmec_status irsmec_params_create(irsmec_params** out)
{
    if (out == nullptr)
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        *out = new irsmec_params;
        return ok();
    });
}

void irsmec_params_destroy(irsmec_params* params) { delete params; }

irsmec_status irsmec_params_set(irsmec_params* params, const char* key, const char* value)
{
    if (params == nullptr || key == nullptr || value == nullptr)
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null argument");
    if (!irsmec::is_param_key(key))
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, std::string("unknown parameter '") + key + "'");
    return guarded([&] {
        irsmec::SystemParams next = params->draft;
        try {
            irsmec::set_param(next, key, value);
        } catch (const std::invalid_argument& e) {
            return fail(IRSMEC_ERR_PARSE, e.what());
        }
        params->draft = next;
        params->entries.push_back({key, value, 0});
        return ok();
    });
}

irsmec_status irsmec_params_load_file(irsmec_params* params, const char* path)
{
    if (params == nullptr || path == nullptr)
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<irsmec::ConfigEntry> entries;
        try {
            entries = irsmec::read_config_file(path);
        } catch (const std::invalid_argument& e) {
            return fail(IRSMEC_ERR_PARSE, e.what());
        } catch (const std::runtime_error& e) {
            return fail(IRSMEC_ERR_IO, e.what());
        }
        irsmec::SystemParams next = params->draft;
        for (const auto& e : entries) {
            try {
                irsmec::set_param(next, e.key, e.value);
            } catch (const std::invalid_argument& ex) {
                return fail(IRSMEC_ERR_PARSE, std::string(path) + ": line " + std::to_string(e.line) + ": " + ex.what());
            }
        }
        params->draft = next;
        params->entries.insert(params->entries.end(), entries.begin(), entries.end());
        return ok();
    });
}

irsmec_status irsmec_run_scheme(const irsmec_params* params, const char* schemes, int trials, uint64_t seed,
                                int threads, irsmec_records** out)
{
    if (params == nullptr || schemes == nullptr || out == nullptr)
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const auto cfg = make_config(params, schemes, trials, seed, threads);
        return finish(irsmec::run_scheme(cfg), out);
    });
}

irsmec_status irsmec_sweep(const irsmec_params* params, const char* schemes, const char* name, const double* values,
                           size_t count, int trials, uint64_t seed, int threads, irsmec_records** out)
{
    if (params == nullptr || schemes == nullptr || name == nullptr || out == nullptr ||
        (values == nullptr && count > 0))
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto cfg = make_config(params, schemes, trials, seed, threads);
        cfg.sweep = irsmec::Sweep{name, std::vector<double>(values, values + count)};
        return finish(irsmec::sweep_parameter(cfg), out);
    });
}

size_t irsmec_records_count(const irsmec_records* records) { return records ? records->records.size() : 0; }

irsmec_status irsmec_records_get(const irsmec_records* records, size_t index, irsmec_record* out)
{
    if (records == nullptr || out == nullptr)
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= records->records.size())
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "record index " + std::to_string(index) + " out of range");
    const auto& r = records->records[index];
    out->scheme = records->scheme_names[index].c_str();
    out->seed = r.seed;
    out->param = r.param.c_str();
    out->value = r.value;
    out->total_j = r.total_J;
    out->wet_j = r.wet_J;
    out->edge_j = r.edge_J;
    out->iterations = r.iters;
    out->ms = r.ms;
    out->status = r.status == irsmec::RecordStatus::ok           ? IRSMEC_RECORD_OK
                  : r.status == irsmec::RecordStatus::infeasible ? IRSMEC_RECORD_INFEASIBLE
                                                                 : IRSMEC_RECORD_ERROR;
    out->message = r.message.c_str();
    return ok();
}

irsmec_status irsmec_write_report(const irsmec_records* records, const char* dir)
{
    if (records == nullptr || dir == nullptr)
        return fail(IRSMEC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        try {
            irsmec::emit_report(records->records, dir);
        } catch (const std::runtime_error& e) {
            return fail(IRSMEC_ERR_IO, e.what());
        }
        return ok();
    });
}

void irsmec_records_destroy(irsmec_records* records) { delete records; }

}  // extern "C"
