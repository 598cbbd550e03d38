// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/feqn.h"

#include <cstring>
#include <new>
#include <string>

#include "feqn/error.hpp"
#include "feqn/problem.hpp"

struct feqn_report {
    std::string json;
    std::string text;
    std::string verdict;
    double elapsed_ms = 0;
};

namespace {

thread_local std::string g_last_error;

feqn_status status_of(feqn::ErrorCode code) {
    switch (code) {
    case feqn::ErrorCode::InvalidArgument: return FEQN_E_INVALID_ARGUMENT;
    case feqn::ErrorCode::Parse: return FEQN_E_PARSE;
    case feqn::ErrorCode::Precondition: return FEQN_E_PRECONDITION;
    case feqn::ErrorCode::Inconsistent: return FEQN_E_INCONSISTENT;
    case feqn::ErrorCode::MissingData: return FEQN_E_MISSING_DATA;
    case feqn::ErrorCode::SizeGuard: return FEQN_E_SIZE_GUARD;
    case feqn::ErrorCode::Internal: return FEQN_E_INTERNAL;
    }
    return FEQN_E_INTERNAL;
}

template <class Body>
feqn_status guarded(Body&& body) {
    g_last_error.clear();
    try {
        return body();
    } catch (const feqn::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FEQN_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FEQN_E_INTERNAL;
    }
}

feqn_status resolve_command(const char* name, std::optional<feqn::Command>& out) {
    if (!name)
        return FEQN_OK;
    out = feqn::parse_command(name);
    if (!out) {
        g_last_error = std::string("unknown command \"") + name + "\"";
        return FEQN_E_UNKNOWN_COMMAND;
    }
    return FEQN_OK;
}

}  // namespace

extern "C" {

const char* feqn_version(void) { return "1.0.0"; }

const char* feqn_status_name(feqn_status status) {
    switch (status) {
    case FEQN_OK: return "ok";
    case FEQN_E_INVALID_ARGUMENT: return "invalid-argument";
    case FEQN_E_PARSE: return "parse";
    case FEQN_E_PRECONDITION: return "precondition";
    case FEQN_E_INCONSISTENT: return "inconsistent";
    case FEQN_E_MISSING_DATA: return "missing-data";
    case FEQN_E_SIZE_GUARD: return "size-guard";
    case FEQN_E_INTERNAL: return "internal";
    case FEQN_E_UNKNOWN_COMMAND: return "unknown-command";
    }
    return "unknown";
}

const char* feqn_last_error(void) { return g_last_error.c_str(); }

feqn_status feqn_run(const char* command, const char* spec_json, const uint64_t* seed, feqn_report** out) {
    if (!spec_json || !out) {
        g_last_error = "spec_json and out must not be NULL";
        return FEQN_E_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        std::optional<feqn::Command> cmd;
        if (const auto st = resolve_command(command, cmd); st != FEQN_OK)
            return st;
        const auto spec = feqn::parse_spec(spec_json, cmd);
        const auto rep = feqn::run(spec, seed ? std::optional<std::uint64_t>(*seed) : std::nullopt);
        auto* r = new feqn_report;
        r->json = rep.to_json();
        r->text = rep.to_text();
        const auto& v = rep.body["verdict"];
        r->verdict = v.is_string() ? v.get<std::string>() : v.dump();
        r->elapsed_ms = rep.elapsed_ms;
        *out = r;
        return FEQN_OK;
    });
}

const char* feqn_report_json(const feqn_report* report) { return report ? report->json.c_str() : ""; }
const char* feqn_report_text(const feqn_report* report) { return report ? report->text.c_str() : ""; }
const char* feqn_report_verdict(const feqn_report* report) { return report ? report->verdict.c_str() : ""; }
double feqn_report_elapsed_ms(const feqn_report* report) { return report ? report->elapsed_ms : 0.0; }
void feqn_report_free(feqn_report* report) { delete report; }

feqn_status feqn_normalize_spec(const char* command, const char* spec_json, char** canonical) {
    if (!spec_json || !canonical) {
        g_last_error = "spec_json and canonical must not be NULL";
        return FEQN_E_INVALID_ARGUMENT;
    }
    *canonical = nullptr;
    return guarded([&] {
        std::optional<feqn::Command> cmd;
        if (const auto st = resolve_command(command, cmd); st != FEQN_OK)
            return st;
        const std::string text = feqn::render_spec(feqn::parse_spec(spec_json, cmd));
        auto* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *canonical = buf;
        return FEQN_OK;
    });
}

void feqn_string_free(char* s) { delete[] s; }

}  // extern "C"
