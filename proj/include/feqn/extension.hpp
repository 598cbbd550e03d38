// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "feqn/domains.hpp"
#include "feqn/equation.hpp"
#include "feqn/error.hpp"
#include "feqn/rational.hpp"

namespace feqn {

/// Sampled function values keyed by exact points of Q^k.
using PointMap = std::map<Vector, Vector>;

/// A base point (x_1..x_n) of (Q^k)^n with the axis steps +-radius*e_j as its neighbourhood.
struct Patch {
    std::vector<Vector> base;
    Rational radius;

    Patch(std::vector<Vector> base_point, Rational step_radius);
    std::size_t arity() const { return base.size(); }
    std::size_t dimension() const { return base.front().size(); }
    Vector base_sum() const;
    /// The 2k steps in the order +e_1, -e_1, +e_2, ...
    std::vector<Vector> steps() const;

    friend bool operator==(const Patch&, const Patch&) = default;
};

/// Values of f on sums of patch points and of g_1..g_n on the factors.
struct PatchTables {
    PointMap f_values;
    std::vector<PointMap> g_values;

    friend bool operator==(const PatchTables&, const PatchTables&) = default;
};

struct LocalSolution {
    Matrix A;
    Vector u;
    std::vector<Vector> u_i;
    std::size_t pair_checks = 0;  // step pairs on which the Pexider identity was checked
};

/// The base identity f(sum x_i) = sum g_i(x_i) fails on a patch: u_x != sum u_{x,i}.
class ConstantMismatch : public Error {
public:
    ConstantMismatch(const std::string& what, Vector u, Vector u_sum)
        : Error(ErrorCode::Inconsistent, what), u_(std::move(u)), u_sum_(std::move(u_sum)) {}
    const Vector& u() const { return u_; }
    const Vector& u_sum() const { return u_sum_; }

private:
    Vector u_;
    Vector u_sum_;
};

LocalSolution local_solve(const Patch& patch, const PatchTables& tables);

/// g_i(x_i): the constant of factor i in the patch-centred form g_i(x_i + z) = A z + c.
Vector anchored_constant(const Patch& patch, const LocalSolution& local, std::size_t i);

/// Points a patch reads from each table. Pair points (sum + z1 + z2) are optional extras.
std::vector<Vector> required_f_points(const Patch& patch, bool include_pairs);
std::vector<Vector> required_g_points(const Patch& patch, std::size_t factor);

/// Closed-box intersection of the patch supports in every factor.
bool patches_overlap(const Patch& a, const Patch& b);

struct OverlapEdge {
    std::size_t from;
    std::size_t to;
};

std::vector<OverlapEdge> overlap_edges(std::span<const Patch> patches);

struct ComponentSolution {
    Matrix A;
    Vector u;
    std::vector<Vector> u_i;
    std::vector<std::size_t> patches;  // indices into the stitched input, ascending
};

struct GlobalSolution {
    /// One entry per connected component of the overlap graph, in a canonical order.
    std::vector<ComponentSolution> components;
    std::size_t edges_checked = 0;

    bool unique() const { return components.size() == 1; }
};

GlobalSolution stitch(std::span<const Patch> patches, std::span<const LocalSolution> locals);

struct PexiderViolation {
    std::size_t index;
    std::vector<Vector> tuple;
    Vector lhs;
    Vector rhs;
};

struct PexiderReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<PexiderViolation> violations;
};

/// Exact check of f(sum x_i) = sum g_i(x_i) on every supplied tuple.
PexiderReport verify_pexider(const PatchTables& tables, std::span<const std::vector<Vector>> tuples);

/// Tables for f = A x + sum u_i and g_i = A x + u_i on everything the patches read.
PatchTables tabulate_pexider(std::span<const Patch> patches, const Matrix& A, std::span<const Vector> u_i,
                             bool include_pairs = true);

PointMap tabulate(const AffineMap& f, std::span<const Vector> points);

/// Anchor points p of K; patch m has base (a_1 p_m, ..., a_n p_m).
struct PatchCover {
    std::vector<Vector> anchors;
    Rational radius;
};

/// Anchors are validated against K; without a radius, 1/8 of the smallest distance from a
/// patch to the boundary of its factor a_i K is used.
PatchCover make_cover(const Domain& domain, std::span<const Rational> alphas, std::vector<Vector> anchors,
                      std::optional<Rational> radius = std::nullopt);

/// A connected 3^k grid of anchors around the centre of K.
PatchCover default_cover(const Domain& domain, std::span<const Rational> alphas);

/// Points of K at which f must be sampled for extend_general_linear.
std::vector<Vector> required_samples(std::span<const Rational> alphas, const PatchCover& cover);

std::vector<Patch> cover_patches(std::span<const Rational> alphas, const PatchCover& cover);

struct Extension {
    AffineMap map;
    Vector u;
    std::vector<Vector> u_i;
    bool offset_free = false;
    std::size_t patches = 0;
    std::size_t edges_checked = 0;
};

/// Recovers f = A x + b from samples of a solution of f(sum a_i x_i) = sum b_i f(x_i) on K by
/// solving the Pexider equation with g_i(x) = b_i f(x / a_i) on prod a_i K.
Extension extend_general_linear(const EquationSpec& spec, const Domain& domain, const PointMap& f_table,
                                const PatchCover& cover);

}  // namespace feqn
