// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "feqn/domains.hpp"
#include "feqn/equation.hpp"
#include "feqn/extension.hpp"
#include "feqn/finite_groups.hpp"

namespace feqn {

enum class Command { CheckInvariance, Characterize, Verify, Extend, EnumerateFinite, WeightedCheck, Shrink };

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Coefficients as written in a problem file; betas are optional for domain-only commands.
struct EquationInput {
    std::vector<Rational> alphas;
    std::optional<std::vector<Rational>> betas;

    friend bool operator==(const EquationInput&, const EquationInput&) = default;
};

struct CoverInput {
    std::optional<std::vector<Vector>> anchors;
    std::optional<Rational> radius;

    friend bool operator==(const CoverInput&, const CoverInput&) = default;
};

/// Either a closed form to be sampled, or explicit samples.
using SampledFunction = std::variant<AffineMap, PointMap>;

struct PexiderInput {
    std::vector<Patch> patches;
    PatchTables tables;
    std::vector<std::vector<Vector>> samples;

    friend bool operator==(const PexiderInput&, const PexiderInput&) = default;
};

/// Tables over the group in lexicographic element order, values as codomain indices.
struct FiniteFunctions {
    std::vector<std::size_t> f;
    std::vector<std::vector<std::size_t>> g;

    friend bool operator==(const FiniteFunctions&, const FiniteFunctions&) = default;
};

struct ProblemSpec {
    Command command = Command::Characterize;
    std::optional<Domain> domain;
    std::optional<EquationInput> equation;
    std::optional<AffineMap> candidate;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<SampledFunction> f;
    std::optional<CoverInput> cover;
    std::optional<PexiderInput> pexider;
    std::optional<FiniteAbelianGroup> group;
    std::optional<FiniteAbelianGroup> codomain;
    std::optional<std::vector<std::int64_t>> alphas;
    std::optional<FiniteFunctions> functions;
};

bool operator==(const ProblemSpec& a, const ProblemSpec& b);

inline constexpr std::uint64_t kDefaultSeed = 20190501;
inline constexpr std::uint64_t kDefaultTrials = 1000;

/// Parses a problem file. `command` comes from the command line; when the file also names one
/// they must agree. Errors carry line/column and the JSON pointer of the offending field.
ProblemSpec parse_spec(std::string_view text, std::optional<Command> command = std::nullopt);

/// Canonical JSON rendering; parse_spec(render_spec(s)) == s.
std::string render_spec(const ProblemSpec& spec);

struct Report {
    nlohmann::ordered_json body;
    double elapsed_ms = 0;

    /// Byte-stable for a given spec and seed.
    std::string to_json() const;
    /// Human-readable; carries the same values plus timing.
    std::string to_text() const;
};

Report run(const ProblemSpec& spec, std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace feqn
