// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/finite_groups.hpp"

#include <numeric>
#include <string>

#include "feqn/error.hpp"

namespace feqn {

namespace {

std::string describe(const FiniteAbelianGroup& g) {
    std::string s;
    for (auto m : g.moduli())
        s += (s.empty() ? "Z_" : " x Z_") + std::to_string(m);
    return s;
}

std::int64_t reduce(std::int64_t v, std::int64_t m) {
    const std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

std::uint64_t power(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && out > kExhaustiveBudget * 1000 / base)
            return UINT64_MAX;
        out *= base;
    }
    return out;
}

void check_family(const GroupFunction& f, std::span<const GroupFunction> gs) {
    if (gs.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "the Pexider equation needs n >= 2 functions g_i");
    for (const auto& g : gs)
        if (!(g.domain == f.domain) || !(g.codomain == f.codomain))
            throw Error(ErrorCode::InvalidArgument, "f and the g_i must share domain and codomain");
}

void guard_tuples(std::size_t order, std::size_t n) {
    if (power(order, n) > kExhaustiveBudget)
        throw Error(ErrorCode::SizeGuard, "exhaustive check over " + std::to_string(order) + "^" + std::to_string(n) +
                                              " tuples exceeds the budget of " + std::to_string(kExhaustiveBudget));
}

// Calls visit(tuple) for every tuple of X^n in lexicographic order until it returns false.
template <class Visit>
void for_each_tuple(std::size_t order, std::size_t n, Visit&& visit) {
    std::vector<std::size_t> t(n, 0);
    for (;;) {
        if (!visit(t))
            return;
        std::size_t pos = n;
        while (pos > 0 && ++t[pos - 1] == order)
            t[--pos] = 0;
        if (pos == 0)
            return;
    }
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty())
        throw Error(ErrorCode::InvalidArgument, "a group needs at least one cyclic factor");
    for (auto m : moduli_) {
        if (m < 2)
            throw Error(ErrorCode::InvalidArgument, "cyclic factor modulus " + std::to_string(m) + " is below 2");
        if (order_ > kExhaustiveBudget)
            throw Error(ErrorCode::SizeGuard, "group order exceeds " + std::to_string(kExhaustiveBudget));
        order_ *= static_cast<std::size_t>(m);
    }
    if (order_ > kExhaustiveBudget)
        throw Error(ErrorCode::SizeGuard, "group order exceeds " + std::to_string(kExhaustiveBudget));
}

std::vector<std::int64_t> FiniteAbelianGroup::coords(std::size_t index) const {
    std::vector<std::int64_t> c(moduli_.size());
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        c[j] = static_cast<std::int64_t>(index % static_cast<std::size_t>(moduli_[j]));
        index /= static_cast<std::size_t>(moduli_[j]);
    }
    return c;
}

std::size_t FiniteAbelianGroup::index(std::span<const std::int64_t> coords) const {
    if (coords.size() != moduli_.size())
        throw Error(ErrorCode::InvalidArgument, "element has " + std::to_string(coords.size()) +
                                                    " coordinates, group " + describe(*this) + " has rank " +
                                                    std::to_string(moduli_.size()));
    std::size_t idx = 0;
    for (std::size_t j = 0; j < coords.size(); ++j)
        idx = idx * static_cast<std::size_t>(moduli_[j]) + static_cast<std::size_t>(reduce(coords[j], moduli_[j]));
    return idx;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
    std::size_t idx = 0, place = 1;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        const auto m = static_cast<std::size_t>(moduli_[j]);
        idx += ((a % m + b % m) % m) * place;
        a /= m;
        b /= m;
        place *= m;
    }
    return idx;
}

std::size_t FiniteAbelianGroup::neg(std::size_t a) const {
    std::size_t idx = 0, place = 1;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        const auto m = static_cast<std::size_t>(moduli_[j]);
        idx += ((m - a % m) % m) * place;
        a /= m;
        place *= m;
    }
    return idx;
}

std::size_t FiniteAbelianGroup::scale(std::int64_t c, std::size_t a) const {
    auto x = coords(a);
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = reduce(reduce(c, moduli_[j]) * x[j], moduli_[j]);
    return index(x);
}

std::size_t FiniteAbelianGroup::generator(std::size_t j) const {
    std::vector<std::int64_t> c(moduli_.size(), 0);
    c.at(j) = 1;
    return index(c);
}

GroupFunction::GroupFunction(FiniteAbelianGroup dom, FiniteAbelianGroup cod, std::vector<std::size_t> values)
    : domain(std::move(dom)), codomain(std::move(cod)), table(std::move(values)) {
    if (table.size() != domain.order())
        throw Error(ErrorCode::InvalidArgument, "function table has " + std::to_string(table.size()) +
                                                    " entries but the domain has order " +
                                                    std::to_string(domain.order()));
    for (auto v : table)
        if (v >= codomain.order())
            throw Error(ErrorCode::InvalidArgument, "function value index " + std::to_string(v) +
                                                        " is outside the codomain");
}

bool GroupFunction::is_homomorphism() const {
    for (std::size_t a = 0; a < domain.order(); ++a)
        for (std::size_t b = 0; b < domain.order(); ++b)
            if (table[domain.add(a, b)] != codomain.add(table[a], table[b]))
                return false;
    return true;
}

std::uint64_t homomorphism_count(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h) {
    std::uint64_t count = 1;
    for (auto m : g.moduli())
        for (auto n : h.moduli())
            count *= static_cast<std::uint64_t>(std::gcd(m, n));
    return count;
}

std::vector<GroupFunction> enumerate_homomorphisms(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h) {
    if (static_cast<std::uint64_t>(g.order()) * h.order() > kExhaustiveBudget)
        throw Error(ErrorCode::SizeGuard, "|G| * |H| = " + std::to_string(g.order() * h.order()) +
                                              " exceeds the budget of " + std::to_string(kExhaustiveBudget));
    // Each result is a table of |G| entries checked on |G|^2 pairs.
    const std::uint64_t expected = homomorphism_count(g, h);
    const std::uint64_t pairs = static_cast<std::uint64_t>(g.order()) * g.order();
    if (expected > kExhaustiveBudget * 100 / pairs)
        throw Error(ErrorCode::SizeGuard, std::to_string(expected) + " homomorphisms from " + describe(g) + " to " +
                                              describe(h) + " would need more than " +
                                              std::to_string(kExhaustiveBudget * 100) + " pair checks");

    // Admissible images of e_j: elements y of H with m_j y = 0.
    std::vector<std::vector<std::size_t>> images(g.rank());
    for (std::size_t j = 0; j < g.rank(); ++j)
        for (std::size_t y = 0; y < h.order(); ++y)
            if (h.scale(g.moduli()[j], y) == 0)
                images[j].push_back(y);

    std::vector<GroupFunction> out;
    std::vector<std::size_t> choice(g.rank(), 0);
    for (;;) {
        std::vector<std::size_t> table(g.order());
        for (std::size_t x = 0; x < g.order(); ++x) {
            const auto c = g.coords(x);
            std::size_t y = 0;
            for (std::size_t j = 0; j < g.rank(); ++j)
                y = h.add(y, h.scale(c[j], images[j][choice[j]]));
            table[x] = y;
        }
        GroupFunction hom(g, h, std::move(table));
        if (!hom.is_homomorphism())
            throw Error(ErrorCode::Internal, "generated map failed the exhaustive additivity check");
        out.push_back(std::move(hom));
        std::size_t pos = g.rank();
        while (pos > 0 && ++choice[pos - 1] == images[pos - 1].size())
            choice[--pos] = 0;
        if (pos == 0)
            break;
    }
    if (out.size() != expected)
        throw Error(ErrorCode::Internal, "homomorphism count " + std::to_string(out.size()) +
                                             " differs from the gcd formula " + std::to_string(expected));
    return out;
}

std::optional<std::vector<std::size_t>> weighted_pexider_violation(std::span<const std::int64_t> alphas,
                                                                   const GroupFunction& f,
                                                                   std::span<const GroupFunction> gs) {
    check_family(f, gs);
    if (alphas.size() != gs.size())
        throw Error(ErrorCode::InvalidArgument, "got " + std::to_string(alphas.size()) + " coefficients for " +
                                                    std::to_string(gs.size()) + " functions g_i");
    guard_tuples(f.domain.order(), gs.size());
    const auto& X = f.domain;
    const auto& Y = f.codomain;
    std::optional<std::vector<std::size_t>> witness;
    for_each_tuple(X.order(), gs.size(), [&](const std::vector<std::size_t>& t) {
        std::size_t arg = 0, rhs = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            arg = X.add(arg, X.scale(alphas[i], t[i]));
            rhs = Y.add(rhs, gs[i](t[i]));
        }
        if (f(arg) != rhs) {
            witness = t;
            return false;
        }
        return true;
    });
    return witness;
}

Decomposition solve_pexider_unrestricted(const GroupFunction& f, std::span<const GroupFunction> gs) {
    check_family(f, gs);
    const std::vector<std::int64_t> ones(gs.size(), 1);
    if (auto w = weighted_pexider_violation(ones, f, gs)) {
        std::string s;
        for (auto x : *w)
            s += (s.empty() ? "" : ", ") + std::to_string(x);
        throw Error(ErrorCode::Inconsistent, "f(sum x_i) != sum g_i(x_i) at (" + s + ")");
    }
    const auto& X = f.domain;
    const auto& Y = f.codomain;

    std::vector<std::size_t> y_i;
    std::size_t y = 0;
    for (const auto& g : gs) {
        y_i.push_back(g(0));
        y = Y.add(y, g(0));
    }
    if (f(0) != y)
        throw Error(ErrorCode::Internal, "f(0) != sum g_i(0)");

    std::vector<std::size_t> shifted(X.order());
    for (std::size_t x = 0; x < X.order(); ++x) {
        shifted[x] = Y.sub(f(x), y);
        for (std::size_t i = 0; i < gs.size(); ++i)
            if (Y.sub(gs[i](x), y_i[i]) != shifted[x])
                throw Error(ErrorCode::Internal, "shifted f and g_" + std::to_string(i + 1) + " differ at " +
                                                     std::to_string(x));
    }
    GroupFunction A(X, Y, std::move(shifted));
    if (!A.is_homomorphism())
        throw Error(ErrorCode::Internal, "shifted f is not a homomorphism");
    return Decomposition{std::move(A), y, std::move(y_i)};
}

WeightedCheck check_weighted_pexider(std::span<const std::int64_t> alphas, const GroupFunction& f,
                                     std::span<const GroupFunction> gs) {
    for (std::size_t i = 0; i < alphas.size(); ++i)
        if (alphas[i] == 0)
            throw Error(ErrorCode::InvalidArgument, "alpha_" + std::to_string(i + 1) + " is zero");
    WeightedCheck out;
    out.witness = weighted_pexider_violation(alphas, f, gs);
    out.equation_holds = !out.witness;

    const auto& X = f.domain;
    const auto& Y = f.codomain;
    const auto homs = enumerate_homomorphisms(X, Y);
    out.homomorphisms = homs.size();
    for (std::size_t a = 0; a < homs.size() && !out.decomposition; ++a) {
        for (std::size_t y = 0; y < Y.order(); ++y) {
            ++out.candidates_checked;
            std::optional<std::size_t> bad;
            for (std::size_t x = 0; x < X.order() && !bad; ++x)
                if (f(x) != Y.add(homs[a](x), y))
                    bad = x;
            if (bad) {
                out.rejections.push_back({a, y, *bad});
                continue;
            }
            Decomposition d{homs[a], y, {}};
            bool g_ok = true;
            for (std::size_t i = 0; i < gs.size(); ++i) {
                d.y_i.push_back(gs[i](0));
                for (std::size_t x = 0; x < X.order(); ++x)
                    if (gs[i](x) != Y.add(homs[a](X.scale(alphas[i], x)), gs[i](0)))
                        g_ok = false;
            }
            out.g_side_consistent = g_ok;
            out.decomposition = std::move(d);
            break;
        }
    }
    return out;
}

}  // namespace feqn
