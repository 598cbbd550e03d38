// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/extension.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace feqn {

Patch::Patch(std::vector<Vector> base_point, Rational step_radius)
    : base(std::move(base_point)), radius(std::move(step_radius)) {
    if (base.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "a patch needs n >= 2 base points");
    if (base.front().empty())
        throw Error(ErrorCode::InvalidArgument, "patch base points must have positive dimension");
    for (const auto& x : base)
        if (x.size() != base.front().size())
            throw Error(ErrorCode::InvalidArgument, "patch base points have different dimensions");
    if (radius <= 0)
        throw Error(ErrorCode::InvalidArgument, "patch radius must be positive");
}

Vector Patch::base_sum() const {
    Vector s = zeros(dimension());
    for (const auto& x : base)
        s = s + x;
    return s;
}

std::vector<Vector> Patch::steps() const {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < dimension(); ++j) {
        out.push_back(radius * unit(dimension(), j));
        out.push_back(Rational(-radius) * unit(dimension(), j));
    }
    return out;
}

namespace {

const Vector& lookup(const PointMap& table, const Vector& point, const std::string& name) {
    const auto it = table.find(point);
    if (it == table.end())
        throw Error(ErrorCode::MissingData, name + " has no value at " + to_string(point));
    return it->second;
}

std::string g_name(std::size_t i) { return "g_" + std::to_string(i + 1); }

}  // namespace

std::vector<Vector> required_f_points(const Patch& patch, bool include_pairs) {
    const Vector s = patch.base_sum();
    const auto steps = patch.steps();
    std::vector<Vector> pts{s};
    for (const auto& z : steps)
        pts.push_back(s + z);
    if (include_pairs)
        for (const auto& z1 : steps)
            for (const auto& z2 : steps)
                pts.push_back(s + z1 + z2);
    return pts;
}

std::vector<Vector> required_g_points(const Patch& patch, std::size_t factor) {
    const Vector& x = patch.base.at(factor);
    std::vector<Vector> pts{x};
    for (const auto& z : patch.steps())
        pts.push_back(x + z);
    return pts;
}

LocalSolution local_solve(const Patch& patch, const PatchTables& tables) {
    const std::size_t n = patch.arity();
    const std::size_t k = patch.dimension();
    if (tables.g_values.size() != n)
        throw Error(ErrorCode::InvalidArgument, "patch has " + std::to_string(n) + " factors but " +
                                                    std::to_string(tables.g_values.size()) + " g tables were given");
    const Vector s = patch.base_sum();
    const Vector& f0 = lookup(tables.f_values, s, "f");
    const std::size_t h = f0.size();

    auto value = [h](const PointMap& t, const Vector& p, const std::string& name) -> const Vector& {
        const Vector& v = lookup(t, p, name);
        if (v.size() != h)
            throw Error(ErrorCode::InvalidArgument, name + " value at " + to_string(p) + " has dimension " +
                                                        std::to_string(v.size()) + ", expected " + std::to_string(h));
        return v;
    };

    std::vector<Vector> g0;
    for (std::size_t i = 0; i < n; ++i)
        g0.push_back(value(tables.g_values[i], patch.base[i], g_name(i)));

    // Differences on the step set: gt[i][m] = g_i(x_i + z_m) - g_i(x_i), ft[m] = f(s + z_m) - f(s).
    const auto steps = patch.steps();
    std::vector<std::vector<Vector>> gt(n);
    std::vector<Vector> ft;
    for (const auto& z : steps) {
        for (std::size_t i = 0; i < n; ++i)
            gt[i].push_back(value(tables.g_values[i], patch.base[i] + z, g_name(i)) - g0[i]);
        ft.push_back(value(tables.f_values, s + z, "f") - f0);
    }

    for (std::size_t m = 0; m < steps.size(); ++m) {
        for (std::size_t i = 1; i < n; ++i)
            if (gt[i][m] != gt[0][m])
                throw Error(ErrorCode::Inconsistent,
                            "increments of g_1 and " + g_name(i) + " disagree at step " + to_string(steps[m]) +
                                ": " + to_string(gt[0][m]) + " vs " + to_string(gt[i][m]) + " (patch base " +
                                to_string(patch.base[0]) + "...)");
        if (ft[m] != gt[0][m])
            throw Error(ErrorCode::Inconsistent, "increments of f and g_1 disagree at step " + to_string(steps[m]) +
                                                     ": " + to_string(ft[m]) + " vs " + to_string(gt[0][m]));
    }

    LocalSolution sol;
    sol.A = Matrix(h, k);
    for (std::size_t j = 0; j < k; ++j) {
        const Vector& up = gt[0][2 * j];
        const Vector& down = gt[0][2 * j + 1];
        if (down != Rational(-1) * up)
            throw Error(ErrorCode::Inconsistent, "g_1 is not affine along axis " + std::to_string(j + 1) +
                                                     " at " + to_string(patch.base[0]) + ": increments " +
                                                     to_string(up) + " and " + to_string(down));
        sol.A.set_col(j, Rational(1 / patch.radius) * up);
    }

    // f~(z1 + z2) = g~_1(z1) + g~_2(z2) on every step pair whose sum point is tabulated.
    for (std::size_t a = 0; a < steps.size(); ++a)
        for (std::size_t b = 0; b < steps.size(); ++b) {
            const auto it = tables.f_values.find(s + steps[a] + steps[b]);
            if (it == tables.f_values.end())
                continue;
            const Vector lhs = it->second - f0;
            const Vector rhs = gt[0][a] + gt[1][b];
            if (lhs != rhs)
                throw Error(ErrorCode::Inconsistent, "Pexider identity fails on steps " + to_string(steps[a]) +
                                                         " and " + to_string(steps[b]) + ": " + to_string(lhs) +
                                                         " vs " + to_string(rhs));
            ++sol.pair_checks;
        }

    Vector u_sum = zeros(h);
    for (std::size_t i = 0; i < n; ++i) {
        sol.u_i.push_back(g0[i] - sol.A.apply(patch.base[i]));
        u_sum = u_sum + sol.u_i.back();
    }
    sol.u = f0 - sol.A.apply(s);
    if (sol.u != u_sum)
        throw ConstantMismatch("f(sum x_i) != sum g_i(x_i) at base " + to_string(s) + ": u_x = " + to_string(sol.u) +
                                   " but sum of u_{x,i} = " + to_string(u_sum),
                               sol.u, u_sum);
    return sol;
}

Vector anchored_constant(const Patch& patch, const LocalSolution& local, std::size_t i) {
    return local.u_i.at(i) + local.A.apply(patch.base.at(i));
}

bool patches_overlap(const Patch& a, const Patch& b) {
    if (a.arity() != b.arity() || a.dimension() != b.dimension())
        return false;
    const Rational reach = a.radius + b.radius;
    for (std::size_t i = 0; i < a.arity(); ++i)
        for (std::size_t j = 0; j < a.dimension(); ++j)
            if (abs(a.base[i][j] - b.base[i][j]) > reach)
                return false;
    return true;
}

std::vector<OverlapEdge> overlap_edges(std::span<const Patch> patches) {
    std::vector<OverlapEdge> edges;
    for (std::size_t a = 0; a < patches.size(); ++a)
        for (std::size_t b = a + 1; b < patches.size(); ++b)
            if (patches_overlap(patches[a], patches[b]))
                edges.push_back({a, b});
    return edges;
}

GlobalSolution stitch(std::span<const Patch> patches, std::span<const LocalSolution> locals) {
    if (patches.empty())
        throw Error(ErrorCode::InvalidArgument, "no patches to stitch");
    if (patches.size() != locals.size())
        throw Error(ErrorCode::InvalidArgument, "patch and local solution counts differ");
    const std::size_t n = patches.front().arity();
    const std::size_t k = patches.front().dimension();
    for (const auto& p : patches)
        if (p.arity() != n || p.dimension() != k)
            throw Error(ErrorCode::InvalidArgument, "patches have different arity or dimension");

    const auto edges = overlap_edges(patches);
    std::vector<std::vector<std::size_t>> adjacent(patches.size());
    for (const auto& e : edges) {
        const auto& x = locals[e.from];
        const auto& w = locals[e.to];
        if (x.A != w.A)
            throw Error(ErrorCode::Inconsistent, "linear parts differ across overlapping patches " +
                                                     std::to_string(e.from) + " and " + std::to_string(e.to));
        for (std::size_t i = 0; i < n; ++i) {
            const Vector residual = anchored_constant(patches[e.from], x, i) - anchored_constant(patches[e.to], w, i) +
                                    x.A.apply(patches[e.to].base[i] - patches[e.from].base[i]);
            if (!is_zero(residual))
                throw Error(ErrorCode::Inconsistent, "constants of factor " + std::to_string(i + 1) +
                                                         " do not reconcile across patches " + std::to_string(e.from) +
                                                         " and " + std::to_string(e.to) + ": residual " +
                                                         to_string(residual));
        }
        adjacent[e.from].push_back(e.to);
        adjacent[e.to].push_back(e.from);
    }

    GlobalSolution out;
    out.edges_checked = edges.size();
    std::vector<bool> seen(patches.size(), false);
    for (std::size_t root = 0; root < patches.size(); ++root) {
        if (seen[root])
            continue;
        ComponentSolution comp;
        comp.A = locals[root].A;
        for (std::size_t i = 0; i < n; ++i)
            comp.u_i.push_back(anchored_constant(patches[root], locals[root], i) - comp.A.apply(patches[root].base[i]));
        std::deque<std::size_t> queue{root};
        seen[root] = true;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            comp.patches.push_back(x);
            for (std::size_t i = 0; i < n; ++i)
                if (anchored_constant(patches[x], locals[x], i) - comp.A.apply(patches[x].base[i]) != comp.u_i[i])
                    throw Error(ErrorCode::Inconsistent, "global constant of factor " + std::to_string(i + 1) +
                                                             " is contradicted at patch " + std::to_string(x));
            for (std::size_t y : adjacent[x])
                if (!seen[y]) {
                    seen[y] = true;
                    queue.push_back(y);
                }
        }
        std::sort(comp.patches.begin(), comp.patches.end());
        comp.u = zeros(comp.A.rows());
        for (const auto& ui : comp.u_i)
            comp.u = comp.u + ui;
        out.components.push_back(std::move(comp));
    }

    // Canonical order: by the smallest base point in the component, independent of input order.
    auto key = [&](const ComponentSolution& c) {
        std::vector<Rational> best;
        for (std::size_t idx : c.patches) {
            std::vector<Rational> flat;
            for (const auto& x : patches[idx].base)
                flat.insert(flat.end(), x.begin(), x.end());
            if (best.empty() || flat < best)
                best = std::move(flat);
        }
        return best;
    };
    std::stable_sort(out.components.begin(), out.components.end(),
                     [&](const ComponentSolution& a, const ComponentSolution& b) { return key(a) < key(b); });
    return out;
}

PexiderReport verify_pexider(const PatchTables& tables, std::span<const std::vector<Vector>> tuples) {
    PexiderReport rep;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        const auto& tuple = tuples[t];
        if (tuple.size() != tables.g_values.size())
            throw Error(ErrorCode::InvalidArgument, "tuple " + std::to_string(t) + " has " +
                                                        std::to_string(tuple.size()) + " entries, expected " +
                                                        std::to_string(tables.g_values.size()));
        Vector s = zeros(tuple.front().size());
        for (const auto& x : tuple)
            s = s + x;
        Vector lhs = lookup(tables.f_values, s, "f");
        Vector rhs = zeros(lhs.size());
        for (std::size_t i = 0; i < tuple.size(); ++i)
            rhs = rhs + lookup(tables.g_values[i], tuple[i], g_name(i));
        ++rep.checked;
        if (lhs != rhs) {
            rep.pass = false;
            rep.violations.push_back({t, tuple, std::move(lhs), std::move(rhs)});
        }
    }
    return rep;
}

PatchTables tabulate_pexider(std::span<const Patch> patches, const Matrix& A, std::span<const Vector> u_i,
                             bool include_pairs) {
    PatchTables t;
    t.g_values.resize(u_i.size());
    Vector u = zeros(A.rows());
    for (const auto& c : u_i)
        u = u + c;
    for (const auto& p : patches) {
        if (p.arity() != u_i.size())
            throw Error(ErrorCode::InvalidArgument, "patch arity does not match the number of constants");
        for (const auto& pt : required_f_points(p, include_pairs))
            t.f_values.emplace(pt, A.apply(pt) + u);
        for (std::size_t i = 0; i < p.arity(); ++i)
            for (const auto& pt : required_g_points(p, i))
                t.g_values[i].emplace(pt, A.apply(pt) + u_i[i]);
    }
    return t;
}

PointMap tabulate(const AffineMap& f, std::span<const Vector> points) {
    PointMap m;
    for (const auto& p : points)
        m.emplace(p, f(p));
    return m;
}

namespace {

std::vector<Interval> sides_of(const Domain& domain) {
    if (const auto* k = std::get_if<Interval>(&domain))
        return {*k};
    if (const auto* b = std::get_if<Box>(&domain))
        return b->sides();
    throw Error(ErrorCode::InvalidArgument, "extension over cone domains is not supported; use a box");
}

// Chebyshev distance to the boundary of a product of intervals; nullopt if unbounded everywhere.
std::optional<Rational> boundary_distance(const std::vector<Interval>& sides, const Vector& p) {
    std::optional<Rational> d;
    for (std::size_t j = 0; j < sides.size(); ++j) {
        const auto dj = sides[j].boundary_distance(p[j]);
        if (dj && (!d || *dj < *d))
            d = dj;
    }
    return d;
}

std::pair<Rational, Rational> magnitude_range(std::span<const Rational> alphas) {
    Rational lo = abs(alphas.front()), hi = lo;
    for (const auto& a : alphas) {
        lo = std::min(lo, abs(a));
        hi = std::max(hi, abs(a));
    }
    return {lo, hi};
}

}  // namespace

PatchCover make_cover(const Domain& domain, std::span<const Rational> alphas, std::vector<Vector> anchors,
                      std::optional<Rational> radius) {
    const auto sides = sides_of(domain);
    if (alphas.empty() || std::any_of(alphas.begin(), alphas.end(), [](const Rational& a) { return a == 0; }))
        throw Error(ErrorCode::InvalidArgument, "coefficients must be non-empty and non-zero");
    if (anchors.empty())
        throw Error(ErrorCode::InvalidArgument, "a cover needs at least one anchor");
    std::optional<Rational> nearest;
    for (const auto& p : anchors) {
        if (p.size() != sides.size() || !contains(domain, p))
            throw Error(ErrorCode::InvalidArgument, "anchor " + to_string(p) + " is not a point of " + describe(domain));
        const auto d = boundary_distance(sides, p);
        if (d && (!nearest || *d < *nearest))
            nearest = d;
    }
    const Rational min_alpha = magnitude_range(alphas).first;
    const Rational limit = min_alpha * nearest.value_or(Rational(1));
    if (!radius)
        radius = limit / 8;
    else if (*radius <= 0 || *radius >= limit)
        throw Error(ErrorCode::InvalidArgument, "radius " + to_string(*radius) +
                                                    " must be positive and below the patch-to-boundary distance " +
                                                    to_string(limit));
    return {std::move(anchors), *radius};
}

PatchCover default_cover(const Domain& domain, std::span<const Rational> alphas) {
    const auto sides = sides_of(domain);
    Vector centre;
    for (const auto& s : sides)
        centre.push_back(s.centre());
    const auto [min_alpha, max_alpha] = magnitude_range(alphas);
    const Rational delta = boundary_distance(sides, centre).value_or(Rational(1));
    // Spacing small enough that neighbouring patches overlap once the radius is derived from
    // the anchors' boundary distance (>= 15/16 delta).
    const Rational spacing = delta * min_alpha / (16 * max_alpha);
    std::vector<Vector> anchors;
    const std::size_t k = sides.size();
    std::size_t count = 1;
    for (std::size_t j = 0; j < k; ++j)
        count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
        Vector p = centre;
        std::size_t c = code;
        for (std::size_t j = 0; j < k; ++j, c /= 3)
            p[j] += spacing * (static_cast<long>(c % 3) - 1);
        anchors.push_back(std::move(p));
    }
    return make_cover(domain, alphas, std::move(anchors));
}

std::vector<Patch> cover_patches(std::span<const Rational> alphas, const PatchCover& cover) {
    std::vector<Patch> patches;
    for (const auto& p : cover.anchors) {
        std::vector<Vector> base;
        for (const auto& a : alphas)
            base.push_back(a * p);
        patches.emplace_back(std::move(base), cover.radius);
    }
    return patches;
}

std::vector<Vector> required_samples(std::span<const Rational> alphas, const PatchCover& cover) {
    std::set<Vector> pts;
    for (const auto& patch : cover_patches(alphas, cover)) {
        for (const auto& q : required_f_points(patch, true))
            pts.insert(q);
        for (std::size_t i = 0; i < alphas.size(); ++i)
            for (const auto& q : required_g_points(patch, i))
                pts.insert(Rational(1 / alphas[i]) * q);
    }
    return {pts.begin(), pts.end()};
}

Extension extend_general_linear(const EquationSpec& spec, const Domain& domain, const PointMap& f_table,
                                const PatchCover& cover) {
    const auto& alphas = spec.alphas();
    const auto& betas = spec.betas();
    const std::size_t n = spec.arity();
    sides_of(domain);
    if (!check_invariance(domain, alphas).invariant)
        throw Error(ErrorCode::Precondition, "the domain " + describe(domain) +
                                                 " is not invariant under the alphas; the equation leaves K");

    const auto patches = cover_patches(alphas, cover);
    // g_i(x) = b_i f(x / a_i) on a_i K; f itself is read on sum a_i K.
    PatchTables tables;
    tables.g_values.resize(n);
    for (const auto& patch : patches) {
        const auto f_points = required_f_points(patch, true);
        for (std::size_t m = 0; m < f_points.size(); ++m) {
            const auto it = f_table.find(f_points[m]);
            if (it != f_table.end())
                tables.f_values.emplace(it->first, it->second);
            else if (m <= 2 * patch.dimension())
                throw Error(ErrorCode::MissingData, "f has no sample at " + to_string(f_points[m]));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& q : required_g_points(patch, i)) {
                const Vector src = Rational(1 / alphas[i]) * q;
                const auto it = f_table.find(src);
                if (it == f_table.end())
                    throw Error(ErrorCode::MissingData, "f has no sample at " + to_string(src) + " (needed for " +
                                                            g_name(i) + " at " + to_string(q) + ")");
                tables.g_values[i].emplace(q, betas[i] * it->second);
            }
    }

    std::vector<LocalSolution> locals;
    for (const auto& patch : patches) {
        try {
            locals.push_back(local_solve(patch, tables));
        } catch (const ConstantMismatch& e) {
            const Rational bsum = spec.beta_sum();
            throw Error(ErrorCode::Inconsistent, "recovered offset u = " + to_string(e.u()) +
                                                     " contradicts u = u * sum(beta_i) = " + to_string(e.u_sum()) +
                                                     " (sum of betas = " + to_string(bsum) + ")");
        }
    }
    const auto global = stitch(patches, locals);
    if (!global.unique())
        throw Error(ErrorCode::Precondition, "the patch cover splits into " + std::to_string(global.components.size()) +
                                                 " components; the extension is not determined");
    const auto& comp = global.components.front();

    for (std::size_t i = 0; i < n; ++i)
        if (!(Rational(alphas[i] - betas[i]) * comp.A).is_zero())
            throw Error(ErrorCode::Inconsistent, "homogeneity A(alpha_i x) = beta_i A(x) fails for i = " +
                                                     std::to_string(i + 1) + ": solution outside rational-matrix model");
    for (std::size_t i = 0; i < n; ++i)
        if (comp.u_i[i] != betas[i] * comp.u)
            throw Error(ErrorCode::Inconsistent, "recovered u_" + std::to_string(i + 1) + " = " +
                                                     to_string(comp.u_i[i]) + " but beta_" + std::to_string(i + 1) +
                                                     " u = " + to_string(betas[i] * comp.u));
    const bool offset_free = spec.beta_sum() == 1;
    if (!offset_free && !is_zero(comp.u))
        throw Error(ErrorCode::Inconsistent, "recovered offset u = " + to_string(comp.u) +
                                                 " contradicts u = u * sum(beta_i) with sum(beta_i) != 1");

    return Extension{AffineMap(comp.A, comp.u), comp.u, comp.u_i, offset_free, patches.size(), global.edges_checked};
}

}  // namespace feqn
