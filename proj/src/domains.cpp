// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/domains.hpp"

#include <algorithm>
#include <cassert>

#include "feqn/error.hpp"
#include "feqn/sampling.hpp"
#include "simplex.hpp"

namespace feqn {

Interval::Interval(Bound lo, Bound hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.kind() == Bound::Kind::PosInf || hi_.kind() == Bound::Kind::NegInf || !(lo_ < hi_))
        throw Error(ErrorCode::InvalidArgument,
                    "interval (" + to_string(lo_) + ", " + to_string(hi_) + ") is empty");
}

Rational Interval::centre() const {
    if (bounded())
        return (lo_.value() + hi_.value()) / 2;
    if (lo_.is_finite())
        return lo_.value() + 1;
    if (hi_.is_finite())
        return hi_.value() - 1;
    return 0;
}

std::optional<Rational> Interval::boundary_distance(const Rational& x) const {
    std::optional<Rational> d;
    if (lo_.is_finite())
        d = x - lo_.value();
    if (hi_.is_finite()) {
        Rational up = hi_.value() - x;
        if (!d || up < *d)
            d = up;
    }
    return d;
}

Box::Box(std::vector<Interval> sides) : sides_(std::move(sides)) {
    if (sides_.empty())
        throw Error(ErrorCode::InvalidArgument, "a box needs at least one side");
}

bool Box::contains(std::span<const Rational> x) const {
    if (x.size() != sides_.size())
        return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!sides_[j].contains(x[j]))
            return false;
    return true;
}

Cone::Cone(std::vector<Vector> generators) : generators_(std::move(generators)) {
    if (generators_.empty())
        throw Error(ErrorCode::InvalidArgument, "a cone needs at least one generator");
    const std::size_t k = generators_.front().size();
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "cone generators must have positive dimension");
    for (const auto& g : generators_) {
        if (g.size() != k)
            throw Error(ErrorCode::InvalidArgument, "cone generators have different dimensions");
        if (is_zero(g))
            throw Error(ErrorCode::InvalidArgument, "cone generator is the zero vector");
    }
    // Columns are generators.
    Matrix m(k, generators_.size());
    for (std::size_t j = 0; j < generators_.size(); ++j)
        m.set_col(j, generators_[j]);
    if (m.rank() != k)
        throw Error(ErrorCode::InvalidArgument, "cone generators do not span Q^" + std::to_string(k) +
                                                    "; the open cone would be empty");
}

bool Cone::contains(std::span<const Rational> x) const {
    const std::size_t k = dimension();
    if (x.size() != k)
        return false;
    const std::size_t m = generators_.size();
    // Variables: mu_1..mu_m, t, s.  G mu + (G 1) t = x,  t + s = 1,  maximize t.
    // x is interior iff the optimum t is positive (lambda = mu + t 1 > 0).
    Matrix a(k + 1, m + 2);
    const Vector sum = interior_point();
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < m; ++j)
            a(r, j) = generators_[j][r];
        a(r, m) = sum[r];
    }
    a(k, m) = 1;
    a(k, m + 1) = 1;
    Vector b(x.begin(), x.end());
    b.push_back(1);
    Vector c = zeros(m + 2);
    c[m] = 1;
    const auto lp = detail::maximize(a, b, c);
    return lp.status == detail::LpResult::Status::Optimal && lp.value > 0;
}

Vector Cone::interior_point() const {
    Vector p = zeros(dimension());
    for (const auto& g : generators_)
        p = p + g;
    return p;
}

bool Cone::is_whole_space() const { return contains(zeros(dimension())); }

std::size_t dimension(const Domain& d) {
    return std::visit(
        [](const auto& v) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Interval>)
                return 1;
            else
                return v.dimension();
        },
        d);
}

bool contains(const Domain& d, std::span<const Rational> x) {
    if (const auto* k = std::get_if<Interval>(&d))
        return x.size() == 1 && k->contains(x[0]);
    if (const auto* b = std::get_if<Box>(&d))
        return b->contains(x);
    return std::get<Cone>(d).contains(x);
}

std::string describe(const Domain& d) {
    if (const auto* k = std::get_if<Interval>(&d))
        return "(" + to_string(k->lo()) + ", " + to_string(k->hi()) + ")";
    if (const auto* b = std::get_if<Box>(&d)) {
        std::string s;
        for (const auto& side : b->sides())
            s += (s.empty() ? "" : " x ") + describe(Domain(side));
        return s;
    }
    std::string s = "cone{";
    for (const auto& g : std::get<Cone>(d).generators())
        s += to_string(g);
    return s + "}";
}

namespace {

void validate_alphas(std::span<const Rational> alphas) {
    if (alphas.empty())
        throw Error(ErrorCode::InvalidArgument, "coefficient list is empty");
    for (std::size_t i = 0; i < alphas.size(); ++i)
        if (alphas[i] == 0)
            throw Error(ErrorCode::InvalidArgument, "coefficient alpha_" + std::to_string(i + 1) + " is zero");
}

Interval image_of(const Interval& k, std::span<const Rational> alphas) {
    // Each term contributes a_i*lo (a_i > 0) or a_i*hi (a_i < 0) to the lower end, and
    // symmetrically to the upper end. Summing per term avoids 0 * inf.
    Bound lo(Rational(0));
    Bound hi(Rational(0));
    for (const auto& a : alphas) {
        lo = lo + (a > 0 ? k.lo() : k.hi()).scaled(a);
        hi = hi + (a > 0 ? k.hi() : k.lo()).scaled(a);
    }
    return Interval(lo, hi);
}

// Candidate coordinates for the deterministic grid stage: centre, then quartiles.
std::vector<Rational> grid_points(const Interval& k) {
    if (k.bounded()) {
        const Rational w = k.hi().value() - k.lo().value();
        return {k.centre(), k.lo().value() + w / 4, k.lo().value() + 3 * w / 4};
    }
    if (k.lo().is_finite())
        return {k.centre(), k.lo().value() + frac(1, 2), k.lo().value() + 2};
    if (k.hi().is_finite())
        return {k.centre(), k.hi().value() - 2, k.hi().value() - frac(1, 2)};
    return {Rational(0), Rational(-1), Rational(1)};
}

Rational weighted_sum(std::span<const Rational> alphas, std::span<const Rational> xs) {
    Rational s = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        s += alphas[i] * xs[i];
    return s;
}

// Point of k approaching the lower (toward_hi = false) or upper end, parameterised by depth.
Rational toward_end(const Interval& k, bool toward_hi, unsigned depth) {
    const Bound& end = toward_hi ? k.hi() : k.lo();
    const Rational step = Rational(mpz_class(1) << depth);  // 2^depth
    if (!end.is_finite())
        return toward_hi ? Rational(k.centre() + step) : Rational(k.centre() - step);
    const Rational gap = abs(end.value() - k.centre());
    return toward_hi ? Rational(end.value() - gap / step) : Rational(end.value() + gap / step);
}

std::optional<Vector> interval_witness(const Interval& k, std::span<const Rational> alphas,
                                       const Interval& image, std::uint64_t seed) {
    const std::size_t n = alphas.size();

    if (n <= 10) {
        const auto pts = grid_points(k);
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            Vector xs(n);
            for (std::size_t i = 0; i < n; ++i)
                xs[i] = pts[idx[i]];
            if (!k.contains(weighted_sum(alphas, xs)))
                return xs;
            std::size_t pos = n;
            while (pos > 0 && ++idx[pos - 1] == pts.size())
                idx[--pos] = 0;
            if (pos == 0)
                break;
        }
    }

    Sampler sampler(seed);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector xs(n);
        for (auto& x : xs)
            x = sampler.in_interval(k);
        if (!k.contains(weighted_sum(alphas, xs)))
            return xs;
    }

    // Push every coordinate toward the end of K that drives the sum past the violated end
    // of K; the image is open and extends strictly beyond K, so this terminates.
    const bool low_side = image.lo() < k.lo();
    for (unsigned depth = 1; depth < 4096; ++depth) {
        Vector xs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool pos = alphas[i] > 0;
            xs[i] = toward_end(k, low_side ? !pos : pos, depth);
        }
        if (!k.contains(weighted_sum(alphas, xs)))
            return xs;
    }
    return std::nullopt;
}

}  // namespace

WeightedImage weighted_image(const Domain& domain, std::span<const Rational> alphas) {
    validate_alphas(alphas);
    WeightedImage out{Interval::whole_line(), 0, 0};
    for (const auto& a : alphas)
        (a > 0 ? out.alpha_plus : out.alpha_minus) += a;
    if (const auto* k = std::get_if<Interval>(&domain)) {
        out.result = image_of(*k, alphas);
    } else if (const auto* b = std::get_if<Box>(&domain)) {
        std::vector<Interval> sides;
        for (const auto& side : b->sides())
            sides.push_back(image_of(side, alphas));
        out.result = Box(std::move(sides));
    } else {
        throw Error(ErrorCode::InvalidArgument, "weighted_image is not defined for cones; use check_invariance");
    }
    return out;
}

InvarianceResult check_invariance(const Domain& domain, std::span<const Rational> alphas, std::uint64_t seed) {
    validate_alphas(alphas);
    const std::size_t n = alphas.size();
    InvarianceResult res;

    if (const auto* cone = std::get_if<Cone>(&domain)) {
        // a K = K for a > 0 and a K = -K for a < 0, so with a negative coefficient the image
        // is -K or K + (-K) = Q^k, inside K only when K is everything.
        const bool all_positive = std::all_of(alphas.begin(), alphas.end(), [](const Rational& a) { return a > 0; });
        if (all_positive || cone->is_whole_space()) {
            res.invariant = true;
            return res;
        }
        Rational plus = 0, minus = 0;
        for (const auto& a : alphas)
            (a > 0 ? plus : minus) += a;
        // Positive slots get p, negative slots s*p with plus + s*minus = -1; the sum is -p.
        const Vector p = cone->interior_point();
        const Rational s = (1 + plus) / -minus;
        InvarianceWitness w;
        for (const auto& a : alphas)
            w.tuple.push_back(a > 0 ? p : s * p);
        w.value = zeros(p.size());
        for (std::size_t i = 0; i < n; ++i)
            w.value = w.value + alphas[i] * w.tuple[i];
        if (cone->contains(w.value))
            throw Error(ErrorCode::Internal, "cone witness construction failed");
        res.witness = std::move(w);
        return res;
    }

    res.image = weighted_image(domain, alphas);
    if (const auto* k = std::get_if<Interval>(&domain)) {
        const auto& img = std::get<Interval>(res.image->result);
        res.invariant = k->includes(img);
        if (!res.invariant) {
            auto xs = interval_witness(*k, alphas, img, seed);
            if (!xs)
                throw Error(ErrorCode::Internal, "no witness found for a failed inclusion");
            InvarianceWitness w;
            for (auto& x : *xs)
                w.tuple.push_back(Vector{x});
            w.value = Vector{weighted_sum(alphas, *xs)};
            res.witness = std::move(w);
        }
        return res;
    }

    const auto& box = std::get<Box>(domain);
    const auto& img = std::get<Box>(res.image->result);
    res.invariant = true;
    for (std::size_t j = 0; j < box.dimension(); ++j) {
        if (box.sides()[j].includes(img.sides()[j]))
            continue;
        res.invariant = false;
        auto xs = interval_witness(box.sides()[j], alphas, img.sides()[j], seed);
        if (!xs)
            throw Error(ErrorCode::Internal, "no witness found for a failed inclusion");
        InvarianceWitness w;
        for (std::size_t i = 0; i < n; ++i) {
            Vector point;
            for (const auto& side : box.sides())
                point.push_back(side.centre());
            point[j] = (*xs)[i];
            w.tuple.push_back(std::move(point));
        }
        w.value = zeros(box.dimension());
        for (std::size_t i = 0; i < n; ++i)
            w.value = w.value + alphas[i] * w.tuple[i];
        res.witness = std::move(w);
        break;
    }
    return res;
}

SymmetricSubdomain find_symmetric_subdomain(const Interval& domain, std::span<const Rational> alphas) {
    validate_alphas(alphas);
    Rational total = 0, plus = 0, minus = 0;
    for (const auto& a : alphas) {
        total += abs(a);
        (a > 0 ? plus : minus) += a;
    }
    if (total > 1)
        throw Error(ErrorCode::Precondition, "sum of |alpha_i| is " + to_string(total) +
                                                 " > 1; no symmetric invariant subdomain construction is "
                                                 "available in that case");
    if (!check_invariance(Domain(domain), alphas).invariant)
        throw Error(ErrorCode::Precondition, "domain " + describe(Domain(domain)) +
                                                 " is not invariant under the coefficients");

    SymmetricSubdomain out{domain, plus, minus, false, false, {}};
    if (minus == 0) {
        out.note = "all coefficients are positive; K is returned unchanged";
        return out;
    }

    if (!domain.bounded()) {
        // An invariant interval with a mixed-sign combination that is unbounded on one side is
        // unbounded on both.
        if (domain.lo().is_finite() || domain.hi().is_finite())
            throw Error(ErrorCode::Internal, "half-bounded interval passed the invariance check");
        out.interval = Interval::whole_line();
        out.unbounded_case = true;
        out.note = "K is unbounded, hence the whole line";
        return out;
    }

    const Rational a = domain.lo().value();
    const Rational b = domain.hi().value();
    if ((1 - plus) * a - minus * b > 0 || (1 - plus) * b - minus * a < 0)
        throw Error(ErrorCode::Internal, "endpoint inequalities fail for an invariant interval");
    if (plus - minus == 1) {
        out.edge_case = true;
        if (a + b != 0)
            throw Error(ErrorCode::Internal, "alpha+ - alpha- = 1 but K is not symmetric");
    }
    if (!(a < 0 && b > 0))
        throw Error(ErrorCode::Internal, "0 is not interior to an invariant interval");

    const Rational c = std::min(Rational(-a), b);
    out.interval = Interval(Bound(Rational(-c)), Bound(c));

    std::vector<Rational> magnitudes;
    for (const auto& alpha : alphas)
        magnitudes.push_back(abs(alpha));
    const auto img = std::get<Interval>(weighted_image(Domain(out.interval), magnitudes).result);
    if (!domain.includes(out.interval) || !out.interval.includes(img))
        throw Error(ErrorCode::Internal, "symmetric subdomain fails its postcondition");
    out.note = out.edge_case ? "alpha+ - alpha- = 1 forces K symmetric; K' = K" : "K' = K n (-K)";
    return out;
}

Rational Sampler::positive_fraction(std::uint64_t max_ratio) {
    const std::uint64_t q = 1 + below(64);
    const std::uint64_t p = 1 + below(max_ratio * q);
    return frac(static_cast<long>(p), static_cast<long>(q));
}

Rational Sampler::in_interval(const Interval& k) {
    if (k.bounded()) {
        const std::uint64_t q = 2 + below(63);
        const std::uint64_t r = 1 + below(q - 1);
        return k.lo().value() + (k.hi().value() - k.lo().value()) * frac(static_cast<long>(r), static_cast<long>(q));
    }
    static constexpr unsigned long kScales[] = {1, 1, 10, 100};
    const Rational mag = Rational(kScales[below(4)]) * positive_fraction(4);
    if (k.lo().is_finite())
        return k.lo().value() + mag;
    if (k.hi().is_finite())
        return k.hi().value() - mag;
    return below(2) ? mag : Rational(-mag);
}

Vector Sampler::in_domain(const Domain& d) {
    if (const auto* k = std::get_if<Interval>(&d))
        return {in_interval(*k)};
    if (const auto* b = std::get_if<Box>(&d)) {
        Vector x;
        for (const auto& side : b->sides())
            x.push_back(in_interval(side));
        return x;
    }
    const auto& cone = std::get<Cone>(d);
    Vector x = zeros(cone.dimension());
    for (const auto& g : cone.generators())
        x = x + positive_fraction(4) * g;
    return x;
}

Rational Sampler::signed_rational(std::uint64_t max_num, std::uint64_t max_den) {
    const auto q = static_cast<long>(1 + below(max_den));
    const auto p = static_cast<long>(below(2 * max_num + 1)) - static_cast<long>(max_num);
    return frac(p, q);
}

Rational Sampler::nonzero_rational(std::uint64_t max_num, std::uint64_t max_den) {
    for (;;) {
        Rational r = signed_rational(max_num, max_den);
        if (r != 0)
            return r;
    }
}

}  // namespace feqn
