// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "feqn/rational.hpp"

namespace feqn {

/// Non-empty open interval (lo, hi); endpoints may be infinite.
class Interval {
public:
    Interval(Bound lo, Bound hi);

    static Interval whole_line() { return {Bound::neg_inf(), Bound::pos_inf()}; }

    const Bound& lo() const { return lo_; }
    const Bound& hi() const { return hi_; }
    bool bounded() const { return lo_.is_finite() && hi_.is_finite(); }

    bool contains(const Rational& x) const { return lo_ < Bound(x) && Bound(x) < hi_; }
    /// Inclusion of open intervals: (lo', hi') is a subset of (lo, hi) iff lo' >= lo and hi' <= hi.
    bool includes(const Interval& other) const { return other.lo_ >= lo_ && other.hi_ <= hi_; }

    /// A finite point of the interval used as the centre of probes.
    Rational centre() const;
    /// Distance from x to the nearer endpoint; nullopt when both endpoints are infinite.
    std::optional<Rational> boundary_distance(const Rational& x) const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    Bound lo_;
    Bound hi_;
};

/// Axis-aligned open box, a product of open intervals.
class Box {
public:
    explicit Box(std::vector<Interval> sides);

    const std::vector<Interval>& sides() const { return sides_; }
    std::size_t dimension() const { return sides_.size(); }
    bool contains(std::span<const Rational> x) const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<Interval> sides_;
};

/// Interior of the convex cone generated by finitely many vectors of Q^k.
/// The generators must span Q^k, otherwise the interior is empty.
class Cone {
public:
    explicit Cone(std::vector<Vector> generators);

    const std::vector<Vector>& generators() const { return generators_; }
    std::size_t dimension() const { return generators_.front().size(); }

    /// Exact: x is interior iff x = sum l_j g_j with every l_j > 0 (decided by LP).
    bool contains(std::span<const Rational> x) const;
    /// Sum of the generators; always interior.
    Vector interior_point() const;
    /// True iff the cone is all of Q^k (0 is an interior point).
    bool is_whole_space() const;

    friend bool operator==(const Cone&, const Cone&) = default;

private:
    std::vector<Vector> generators_;
};

using Domain = std::variant<Interval, Box, Cone>;

std::size_t dimension(const Domain& d);
bool contains(const Domain& d, std::span<const Rational> x);
std::string describe(const Domain& d);

/// The exact set {sum a_i x_i : x_i in K} together with the positive/negative coefficient sums.
struct WeightedImage {
    std::variant<Interval, Box> result;
    Rational alpha_plus;
    Rational alpha_minus;
};

WeightedImage weighted_image(const Domain& domain, std::span<const Rational> alphas);

/// A tuple (x_1..x_n) of points of K whose weighted sum leaves K.
struct InvarianceWitness {
    std::vector<Vector> tuple;
    Vector value;
};

struct InvarianceResult {
    bool invariant = false;
    std::optional<WeightedImage> image;       // interval and box domains only
    std::optional<InvarianceWitness> witness;  // present iff !invariant
};

/// Decides sum a_i K subset of K. The seed drives the randomized witness fallback.
InvarianceResult check_invariance(const Domain& domain, std::span<const Rational> alphas,
                                  std::uint64_t seed = 0x5eed);

struct SymmetricSubdomain {
    Interval interval;
    Rational alpha_plus;
    Rational alpha_minus;
    bool unbounded_case = false;  // K unbounded, hence K is the whole line
    bool edge_case = false;       // alpha_plus - alpha_minus == 1
    std::string note;
};

/// For K = (a, b) with sum|a_i| <= 1 and sum a_i K inside K, returns K' = K n (-K),
/// a symmetric neighbourhood of 0 that is invariant under the absolute coefficients.
SymmetricSubdomain find_symmetric_subdomain(const Interval& domain, std::span<const Rational> alphas);

}  // namespace feqn
