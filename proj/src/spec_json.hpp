// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "feqn/domains.hpp"
#include "feqn/equation.hpp"
#include "feqn/extension.hpp"
#include "feqn/finite_groups.hpp"

namespace feqn::detail {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const Rational& q) { return to_string(q); }

inline ojson to_json(const Vector& v) {
    ojson a = ojson::array();
    for (const auto& q : v)
        a.push_back(to_string(q));
    return a;
}

inline ojson to_json(const std::vector<Vector>& vs) {
    ojson a = ojson::array();
    for (const auto& v : vs)
        a.push_back(to_json(v));
    return a;
}

inline ojson to_json(const Matrix& m) {
    ojson a = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        a.push_back(to_json(m.row(r)));
    return a;
}

inline ojson to_json(const AffineMap& f) { return ojson{{"A", to_json(f.A)}, {"b", to_json(f.b)}}; }

inline ojson to_json(const Interval& k) {
    return ojson{{"type", "interval"}, {"lo", to_string(k.lo())}, {"hi", to_string(k.hi())}};
}

inline ojson to_json(const Domain& d) {
    if (const auto* k = std::get_if<Interval>(&d))
        return to_json(*k);
    if (const auto* b = std::get_if<Box>(&d)) {
        ojson sides = ojson::array();
        for (const auto& s : b->sides())
            sides.push_back(ojson{{"lo", to_string(s.lo())}, {"hi", to_string(s.hi())}});
        return ojson{{"type", "box"}, {"sides", sides}};
    }
    return ojson{{"type", "cone"}, {"generators", to_json(std::get<Cone>(d).generators())}};
}

inline std::string point_key(const Vector& p) {
    std::string key;
    for (std::size_t i = 0; i < p.size(); ++i)
        key += (i ? "," : "") + to_string(p[i]);
    return key;
}

inline ojson to_json(const PointMap& m) {
    ojson o = ojson::object();
    for (const auto& [p, v] : m)
        o[point_key(p)] = to_json(v);
    return o;
}

inline ojson element_json(const FiniteAbelianGroup& g, std::size_t idx) {
    const auto c = g.coords(idx);
    if (g.rank() == 1)
        return c.front();
    return c;
}

inline ojson table_json(const FiniteAbelianGroup& cod, const std::vector<std::size_t>& table) {
    ojson a = ojson::array();
    for (auto v : table)
        a.push_back(element_json(cod, v));
    return a;
}

}  // namespace feqn::detail
