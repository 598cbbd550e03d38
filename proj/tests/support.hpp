// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "feqn/domains.hpp"
#include "feqn/equation.hpp"
#include "feqn/rational.hpp"

namespace feqn::testing {

inline Rational Q(const char* s) { return parse_rational(s); }

inline Interval I(const char* lo, const char* hi) { return Interval(Bound::parse(lo), Bound::parse(hi)); }

inline Vector V(std::initializer_list<const char*> xs) {
    Vector v;
    for (const char* x : xs)
        v.push_back(Q(x));
    return v;
}

/// Small random rationals for hand-rolled property generators.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    Rational rational(std::int64_t max_num = 9, std::int64_t max_den = 7) {
        Rational q(static_cast<long>(integer(-max_num, max_num)), static_cast<unsigned long>(integer(1, max_den)));
        q.canonicalize();
        return q;
    }
    Rational nonzero(std::int64_t max_num = 9, std::int64_t max_den = 7) {
        for (;;)
            if (auto q = rational(max_num, max_den); q != 0)
                return q;
    }
    Rational positive(std::int64_t max_num = 9, std::int64_t max_den = 7) { return abs(nonzero(max_num, max_den)); }
    Vector vector(std::size_t n) {
        Vector v;
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(rational());
        return v;
    }
    Matrix matrix(std::size_t rows, std::size_t cols) {
        Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = rational();
        return m;
    }
    bool coin() { return integer(0, 1) == 1; }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Oracle for the weighted image of an interval: each term a_i (lo, hi) is evaluated as an
/// endpoint pair directly and the pairs are summed; infinities are tracked by flags.
struct IntervalOracle {
    Bound lo, hi;
};

inline IntervalOracle weighted_interval_oracle(const Interval& k, std::span<const Rational> alphas) {
    bool lo_inf = false, hi_inf = false;
    Rational lo = 0, hi = 0;
    for (const auto& a : alphas) {
        const Bound& near = a > 0 ? k.lo() : k.hi();
        const Bound& far = a > 0 ? k.hi() : k.lo();
        if (near.is_finite())
            lo += a * near.value();
        else
            lo_inf = true;
        if (far.is_finite())
            hi += a * far.value();
        else
            hi_inf = true;
    }
    return {lo_inf ? Bound::neg_inf() : Bound(lo), hi_inf ? Bound::pos_inf() : Bound(hi)};
}

inline Vector weighted_sum(std::span<const Rational> alphas, std::span<const Vector> xs) {
    Vector s = zeros(xs.front().size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        s = s + alphas[i] * xs[i];
    return s;
}

inline std::int64_t gcd_product(const std::vector<std::int64_t>& m, const std::vector<std::int64_t>& n) {
    std::int64_t p = 1;
    for (auto a : m)
        for (auto b : n)
            p *= std::gcd(a, b);
    return p;
}

}  // namespace feqn::testing

namespace feqn {
inline void PrintTo(const Bound& b, std::ostream* os) { *os << to_string(b); }
}  // namespace feqn
