// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/equation.hpp"

#include <algorithm>

#include "feqn/error.hpp"
#include "feqn/sampling.hpp"

namespace feqn {

EquationSpec::EquationSpec(std::vector<Rational> alphas, std::vector<Rational> betas)
    : alphas_(std::move(alphas)), betas_(std::move(betas)) {
    if (alphas_.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "the equation needs n >= 2 coefficients, got " +
                                                    std::to_string(alphas_.size()));
    if (alphas_.size() != betas_.size())
        throw Error(ErrorCode::InvalidArgument, "alphas and betas have different lengths (" +
                                                    std::to_string(alphas_.size()) + " vs " +
                                                    std::to_string(betas_.size()) + ")");
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
        if (alphas_[i] == 0)
            throw Error(ErrorCode::InvalidArgument, "alpha_" + std::to_string(i + 1) + " is zero");
        if (betas_[i] == 0)
            throw Error(ErrorCode::InvalidArgument, "beta_" + std::to_string(i + 1) + " is zero");
    }
}

Rational EquationSpec::beta_sum() const {
    Rational s = 0;
    for (const auto& b : betas_)
        s += b;
    return s;
}

AffineMap::AffineMap(Matrix a, Vector offset) : A(std::move(a)), b(std::move(offset)) {
    if (A.rows() == 0 || A.cols() == 0)
        throw Error(ErrorCode::InvalidArgument, "affine map needs a non-empty linear part");
    if (b.size() != A.rows())
        throw Error(ErrorCode::InvalidArgument, "offset has length " + std::to_string(b.size()) +
                                                    " but the linear part has " + std::to_string(A.rows()) +
                                                    " rows");
}

SolutionFamily characterize(const EquationSpec& spec) {
    SolutionFamily fam;
    fam.beta_sum = spec.beta_sum();
    fam.offset_free = fam.beta_sum == 1;
    if (!fam.offset_free)
        fam.forced_offset = Rational(0);
    // A rational matrix satisfies A(a x) = a A(x), so A(a_i x) = b_i A(x) reads (a_i - b_i) A = 0.
    fam.linear_part_allowed = true;
    for (std::size_t i = 0; i < spec.arity(); ++i) {
        fam.homogeneity_constraints.emplace_back(spec.alphas()[i], spec.betas()[i]);
        if (spec.alphas()[i] != spec.betas()[i])
            fam.linear_part_allowed = false;
    }
    fam.field_generators = spec.alphas();
    if (fam.linear_part_allowed) {
        fam.note = fam.offset_free ? "f = A x + b with A any rational matrix and b arbitrary"
                                   : "f = A x with A any rational matrix; the offset is forced to 0";
    } else {
        fam.note = "alpha_i != beta_i for some i: a rational-matrix linear part must vanish. "
                   "Additive maps satisfying A(alpha_i x) = beta_i A(x) non-trivially are not "
                   "representable in this model; ";
        fam.note += fam.offset_free ? "representable solutions are the constants f = b"
                                    : "the only representable solution is f = 0";
    }
    return fam;
}

VerifyReport verify_affine_solution(const EquationSpec& spec, const Domain& domain, const AffineMap& candidate,
                                    std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0)
        throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    if (candidate.input_dim() != dimension(domain))
        throw Error(ErrorCode::InvalidArgument, "candidate takes inputs of dimension " +
                                                    std::to_string(candidate.input_dim()) + " but the domain has dimension " +
                                                    std::to_string(dimension(domain)));
    const auto inv = check_invariance(domain, spec.alphas(), seed);
    if (!inv.invariant)
        throw Error(ErrorCode::Precondition, "the domain " + describe(domain) +
                                                 " is not invariant under the alphas; the left-hand side leaves K");

    VerifyReport rep;
    rep.trials = trials;
    rep.seed = seed;
    Sampler sampler(seed);
    const std::size_t n = spec.arity();
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<Vector> xs;
        for (std::size_t i = 0; i < n; ++i)
            xs.push_back(sampler.in_domain(domain));
        Vector arg = zeros(candidate.input_dim());
        Vector rhs = zeros(candidate.output_dim());
        for (std::size_t i = 0; i < n; ++i) {
            arg = arg + spec.alphas()[i] * xs[i];
            rhs = rhs + spec.betas()[i] * candidate(xs[i]);
        }
        Vector lhs = candidate(arg);
        if (lhs != rhs) {
            rep.pass = false;
            rep.violation_trial = t;
            rep.first_violation = std::move(xs);
            rep.lhs = std::move(lhs);
            rep.rhs = std::move(rhs);
            break;
        }
    }
    return rep;
}

FieldDescriptor homogeneity_field(std::span<const Rational> alphas) {
    if (alphas.empty())
        throw Error(ErrorCode::InvalidArgument, "coefficient list is empty");
    FieldDescriptor fd;
    fd.generators.assign(alphas.begin(), alphas.end());
    fd.field = "Q";
    for (const auto& a : alphas) {
        if (a == 0)
            throw Error(ErrorCode::InvalidArgument, "zero coefficient");
        for (const Rational& factor : {a, Rational(1 / a)})
            if (std::find(fd.homogeneity_factors.begin(), fd.homogeneity_factors.end(), factor) ==
                fd.homogeneity_factors.end())
                fd.homogeneity_factors.push_back(factor);
    }
    fd.statement = "A is lambda-homogeneous for every lambda in Q(";
    for (std::size_t i = 0; i < alphas.size(); ++i)
        fd.statement += (i ? ", " : "") + to_string(alphas[i]);
    fd.statement += ") = Q; together with additivity, A is Q-linear";
    return fd;
}

}  // namespace feqn
