// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace feqn {

/// Z_{m_1} x ... x Z_{m_r}. Elements are addressed by their index in lexicographic order of
/// coordinate tuples (first coordinate most significant); index 0 is the identity.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::size_t order() const { return order_; }
    std::size_t rank() const { return moduli_.size(); }

    std::vector<std::int64_t> coords(std::size_t index) const;
    std::size_t index(std::span<const std::int64_t> coords) const;  // coordinates are reduced

    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t neg(std::size_t a) const;
    std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }
    std::size_t scale(std::int64_t c, std::size_t a) const;
    /// Index of the canonical generator e_j.
    std::size_t generator(std::size_t j) const;

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    std::vector<std::int64_t> moduli_;
    std::size_t order_ = 1;
};

/// Total function between finite groups, stored as a table over domain indices.
struct GroupFunction {
    FiniteAbelianGroup domain;
    FiniteAbelianGroup codomain;
    std::vector<std::size_t> table;

    GroupFunction(FiniteAbelianGroup dom, FiniteAbelianGroup cod, std::vector<std::size_t> values);
    std::size_t operator()(std::size_t x) const { return table[x]; }
    bool is_homomorphism() const;

    friend bool operator==(const GroupFunction&, const GroupFunction&) = default;
};

inline constexpr std::uint64_t kExhaustiveBudget = 1'000'000;

/// prod_{i,j} gcd(m_i, n_j), the number of homomorphisms between the two cyclic products.
std::uint64_t homomorphism_count(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h);

/// All homomorphisms G -> H, each verified on every pair of elements.
std::vector<GroupFunction> enumerate_homomorphisms(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h);

struct Decomposition {
    GroupFunction A;
    std::size_t y;
    std::vector<std::size_t> y_i;
};

/// Pexider solution f(sum x_i) = sum g_i(x_i) on all of X^n, written as A + y, A + y_i.
Decomposition solve_pexider_unrestricted(const GroupFunction& f, std::span<const GroupFunction> gs);

/// First (lexicographically smallest) tuple violating f(sum a_i x_i) = sum g_i(x_i), if any.
std::optional<std::vector<std::size_t>> weighted_pexider_violation(std::span<const std::int64_t> alphas,
                                                                   const GroupFunction& f,
                                                                   std::span<const GroupFunction> gs);

struct CandidateRejection {
    std::size_t homomorphism;  // index into the enumeration
    std::size_t offset;
    std::size_t at;             // first x with f(x) != A(x) + y
};

struct WeightedCheck {
    bool equation_holds = false;
    std::optional<std::vector<std::size_t>> witness;
    std::optional<Decomposition> decomposition;
    /// When a decomposition exists: g_i(x) = A(a_i x) + g_i(0) for every i and x.
    std::optional<bool> g_side_consistent;
    std::size_t homomorphisms = 0;
    std::size_t candidates_checked = 0;
    std::vector<CandidateRejection> rejections;
};

WeightedCheck check_weighted_pexider(std::span<const std::int64_t> alphas, const GroupFunction& f,
                                     std::span<const GroupFunction> gs);

}  // namespace feqn
