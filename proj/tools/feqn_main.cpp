// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
//
// feqn <command> --spec <file> [--seed N] [--format json|text]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "feqn/feqn.h"

namespace {

const char* const kCommands[] = {"check-invariance", "characterize", "verify", "extend",
                                 "enumerate-finite", "weighted-check", "shrink"};

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact decision and extension procedures for restricted linear functional equations"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(feqn_version()));

    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::string format = "json";

    for (const char* name : kCommands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--spec", spec_path, "problem spec file (JSON)")->required();
        sub->add_option("--seed", seed, "seed for sampled probes");
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::string text;
    if (!read_file(spec_path, text)) {
        std::cerr << "feqn: cannot read spec file " << spec_path << "\n";
        return 2;
    }

    feqn_report* report = nullptr;
    const feqn_status st =
        feqn_run(command.c_str(), text.c_str(), seed ? &*seed : nullptr, &report);
    if (st != FEQN_OK) {
        std::cerr << "feqn: " << feqn_status_name(st) << ": " << feqn_last_error() << "\n";
        return 1;
    }
    std::cout << (format == "json" ? feqn_report_json(report) : feqn_report_text(report)) << "\n";
    feqn_report_free(report);
    return 0;
}
