// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "feqn/domains.hpp"

namespace feqn {

/// Seeded source of exact rational sample points. The mapping from engine output to
/// rationals is fixed here (no std distributions), so draws are identical on every platform.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    /// Uniform-ish integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return rng_() % n; }

    Rational in_interval(const Interval& k);
    Vector in_domain(const Domain& d);
    /// Signed rational p/q with |p| <= max_num and 1 <= q <= max_den.
    Rational signed_rational(std::uint64_t max_num, std::uint64_t max_den);
    Rational nonzero_rational(std::uint64_t max_num, std::uint64_t max_den);

private:
    Rational positive_fraction(std::uint64_t max_ratio);
    std::mt19937_64 rng_;
};

}  // namespace feqn
