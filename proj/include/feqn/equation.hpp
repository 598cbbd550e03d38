// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "feqn/domains.hpp"
#include "feqn/rational.hpp"

namespace feqn {

/// Coefficients of f(sum a_i x_i) = sum b_i f(x_i); n >= 2, all entries non-zero.
class EquationSpec {
public:
    EquationSpec(std::vector<Rational> alphas, std::vector<Rational> betas);

    const std::vector<Rational>& alphas() const { return alphas_; }
    const std::vector<Rational>& betas() const { return betas_; }
    std::size_t arity() const { return alphas_.size(); }
    Rational beta_sum() const;

    friend bool operator==(const EquationSpec&, const EquationSpec&) = default;

private:
    std::vector<Rational> alphas_;
    std::vector<Rational> betas_;
};

/// x -> A x + b with A an h x k rational matrix.
struct AffineMap {
    Matrix A;
    Vector b;

    AffineMap(Matrix a, Vector offset);
    std::size_t input_dim() const { return A.cols(); }
    std::size_t output_dim() const { return A.rows(); }
    Vector operator()(std::span<const Rational> x) const { return A.apply(x) + b; }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

struct SolutionFamily {
    bool linear_part_allowed = false;
    bool offset_free = false;
    std::optional<Rational> forced_offset;  // 0 whenever sum b_i != 1
    std::vector<std::pair<Rational, Rational>> homogeneity_constraints;
    std::vector<Rational> field_generators;
    Rational beta_sum;
    std::string note;

    friend bool operator==(const SolutionFamily&, const SolutionFamily&) = default;
};

/// The affine solution family of the general linear equation in the rational-matrix model.
SolutionFamily characterize(const EquationSpec& spec);

struct VerifyReport {
    bool pass = true;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> violation_trial;
    std::vector<Vector> first_violation;
    Vector lhs;
    Vector rhs;
};

/// Exact spot check of the equation for a candidate on `trials` seeded tuples drawn from K^n.
VerifyReport verify_affine_solution(const EquationSpec& spec, const Domain& domain, const AffineMap& candidate,
                                    std::uint64_t trials, std::uint64_t seed);

struct FieldDescriptor {
    std::vector<Rational> generators;
    std::string field;  // always "Q" for rational generators
    /// Homogeneity factors reached directly: each a_i and its inverse.
    std::vector<Rational> homogeneity_factors;
    std::string statement;
};

FieldDescriptor homogeneity_field(std::span<const Rational> alphas);

}  // namespace feqn
