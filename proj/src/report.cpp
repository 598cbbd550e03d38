// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <sstream>

#include "feqn/error.hpp"
#include "feqn/problem.hpp"
#include "spec_json.hpp"

namespace feqn {

namespace {

using detail::ojson;
using detail::to_json;

ojson scalar_or_vector(const Vector& v) { return v.size() == 1 ? ojson(to_string(v.front())) : to_json(v); }

ojson tuple_json(const std::vector<Vector>& tuple) {
    ojson a = ojson::array();
    for (const auto& x : tuple)
        a.push_back(scalar_or_vector(x));
    return a;
}

ojson decomposition_json(const Decomposition& d) {
    const auto& cod = d.A.codomain;
    ojson y_i = ojson::array();
    for (auto y : d.y_i)
        y_i.push_back(detail::element_json(cod, y));
    return ojson{{"A", detail::table_json(cod, d.A.table)}, {"y", detail::element_json(cod, d.y)}, {"y_i", y_i}};
}

ojson tuple_indices_json(const FiniteAbelianGroup& g, const std::vector<std::size_t>& t) {
    ojson a = ojson::array();
    for (auto x : t)
        a.push_back(detail::element_json(g, x));
    return a;
}

std::vector<Rational> require_betas(const EquationInput& eq) {
    if (!eq.betas)
        throw Error(ErrorCode::Parse, "equation needs betas");
    return *eq.betas;
}

void run_check_invariance(const ProblemSpec& spec, std::uint64_t seed, ojson& body) {
    const auto& domain = *spec.domain;
    const auto& alphas = spec.equation->alphas;
    const auto res = check_invariance(domain, alphas, seed);
    body["verdict"] = res.invariant ? "invariant" : "not-invariant";
    body["invariant"] = res.invariant;
    body["domain"] = to_json(domain);
    body["alphas"] = to_json(alphas);
    if (res.image) {
        body["image"] = std::visit([](const auto& v) { return to_json(Domain(v)); }, res.image->result);
        body["alpha_plus"] = to_string(res.image->alpha_plus);
        body["alpha_minus"] = to_string(res.image->alpha_minus);
    }
    if (res.witness)
        body["witness"] = ojson{{"tuple", tuple_json(res.witness->tuple)}, {"value", scalar_or_vector(res.witness->value)}};
}

void run_shrink(const ProblemSpec& spec, ojson& body) {
    const auto r = find_symmetric_subdomain(std::get<Interval>(*spec.domain), spec.equation->alphas);
    body["verdict"] = "found";
    body["domain"] = to_json(*spec.domain);
    body["alphas"] = to_json(spec.equation->alphas);
    body["subdomain"] = to_json(r.interval);
    body["alpha_plus"] = to_string(r.alpha_plus);
    body["alpha_minus"] = to_string(r.alpha_minus);
    body["edge_case"] = r.edge_case;
    body["unbounded_case"] = r.unbounded_case;
    body["note"] = r.note;
}

void run_characterize(const ProblemSpec& spec, ojson& body) {
    const EquationSpec eq(spec.equation->alphas, require_betas(*spec.equation));
    const auto fam = characterize(eq);
    const auto field = homogeneity_field(eq.alphas());
    body["verdict"] = fam.linear_part_allowed ? (fam.offset_free ? "f = A x + b" : "f = A x")
                                              : (fam.offset_free ? "f = b" : "f = 0");
    ojson constraints = ojson::array();
    for (const auto& [a, b] : fam.homogeneity_constraints)
        constraints.push_back(ojson::array({to_string(a), to_string(b)}));
    body["family"] = ojson{
        {"linear_part_allowed", fam.linear_part_allowed},
        {"offset_free", fam.offset_free},
        {"forced_offset", fam.forced_offset ? ojson(to_string(*fam.forced_offset)) : ojson(nullptr)},
        {"beta_sum", to_string(fam.beta_sum)},
        {"homogeneity_constraints", constraints},
        {"field_generators", to_json(fam.field_generators)},
        {"note", fam.note},
    };
    body["field"] = ojson{
        {"generators", to_json(field.generators)},
        {"field", field.field},
        {"homogeneity_factors", to_json(field.homogeneity_factors)},
        {"statement", field.statement},
    };
}

void run_verify(const ProblemSpec& spec, std::uint64_t seed, ojson& body) {
    const EquationSpec eq(spec.equation->alphas, require_betas(*spec.equation));
    const auto rep = verify_affine_solution(eq, *spec.domain, *spec.candidate, spec.trials.value_or(kDefaultTrials), seed);
    body["verdict"] = rep.pass ? "pass" : "fail";
    body["trials"] = rep.trials;
    if (!rep.pass) {
        body["first_violation"] = ojson{{"trial", *rep.violation_trial}, {"tuple", tuple_json(rep.first_violation)}};
        body["lhs"] = to_json(rep.lhs);
        body["rhs"] = to_json(rep.rhs);
    }
}

ojson global_json(const GlobalSolution& g) {
    const auto& first = g.components.front();
    ojson o{{"A", to_json(first.A)}, {"u", to_json(first.u)}, {"u_i", to_json(first.u_i)},
            {"unique", g.unique()}, {"components", g.components.size()}};
    if (!g.unique()) {
        ojson comps = ojson::array();
        for (const auto& c : g.components)
            comps.push_back(ojson{{"A", to_json(c.A)}, {"u", to_json(c.u)}, {"u_i", to_json(c.u_i)}, {"patches", c.patches}});
        o["component_solutions"] = comps;
    }
    return o;
}

void run_extend(const ProblemSpec& spec, ojson& body) {
    if (spec.pexider) {
        const auto& in = *spec.pexider;
        std::vector<LocalSolution> locals;
        for (const auto& p : in.patches)
            locals.push_back(local_solve(p, in.tables));
        const auto global = stitch(in.patches, locals);
        body["verdict"] = global.unique() ? "unique" : "non-unique";
        body["global"] = global_json(global);
        body["patches"] = in.patches.size();
        body["edges_checked"] = global.edges_checked;
        if (!in.samples.empty()) {
            const auto rep = verify_pexider(in.tables, in.samples);
            ojson violations = ojson::array();
            for (const auto& v : rep.violations)
                violations.push_back(ojson{{"index", v.index}, {"tuple", tuple_json(v.tuple)},
                                           {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}});
            body["samples"] = ojson{{"pass", rep.pass}, {"checked", rep.checked}, {"violations", violations}};
        }
        return;
    }

    const EquationSpec eq(spec.equation->alphas, require_betas(*spec.equation));
    const auto& domain = *spec.domain;
    if (!check_invariance(domain, eq.alphas()).invariant)
        throw Error(ErrorCode::Precondition, "the domain " + describe(domain) +
                                                 " is not invariant under the alphas; the equation leaves K");
    PatchCover cover = spec.cover && spec.cover->anchors
                           ? make_cover(domain, eq.alphas(), *spec.cover->anchors, spec.cover->radius)
                           : default_cover(domain, eq.alphas());
    if (spec.cover && !spec.cover->anchors && spec.cover->radius)
        cover = make_cover(domain, eq.alphas(), cover.anchors, spec.cover->radius);
    const PointMap table = std::holds_alternative<AffineMap>(*spec.f)
                               ? tabulate(std::get<AffineMap>(*spec.f), required_samples(eq.alphas(), cover))
                               : std::get<PointMap>(*spec.f);
    const auto ext = extend_general_linear(eq, domain, table, cover);
    body["verdict"] = "extended";
    body["A"] = to_json(ext.map.A);
    body["b"] = to_json(ext.map.b);
    body["u"] = to_json(ext.u);
    body["u_i"] = to_json(ext.u_i);
    body["offset_free"] = ext.offset_free;
    body["unique"] = true;
    body["patches"] = ext.patches;
    body["edges_checked"] = ext.edges_checked;
    body["radius"] = to_string(cover.radius);
    body["samples_used"] = table.size();
}

void run_enumerate(const ProblemSpec& spec, ojson& body) {
    const auto& g = *spec.group;
    const auto& h = spec.codomain ? *spec.codomain : g;
    const auto homs = enumerate_homomorphisms(g, h);
    body["group"] = ojson{{"moduli", g.moduli()}};
    body["codomain"] = ojson{{"moduli", h.moduli()}};
    body["count"] = homs.size();
    body["gcd_formula"] = homomorphism_count(g, h);
    ojson tables = ojson::array();
    for (const auto& hom : homs)
        tables.push_back(detail::table_json(h, hom.table));
    body["homomorphisms"] = tables;
    if (spec.functions) {
        const GroupFunction f(g, h, spec.functions->f);
        std::vector<GroupFunction> gs;
        for (const auto& t : spec.functions->g)
            gs.emplace_back(g, h, t);
        body["decomposition"] = decomposition_json(solve_pexider_unrestricted(f, gs));
        body["verdict"] = "decomposed";
    } else {
        body["verdict"] = "enumerated";
    }
}

void run_weighted(const ProblemSpec& spec, ojson& body) {
    const auto& g = *spec.group;
    const auto& h = spec.codomain ? *spec.codomain : g;
    const GroupFunction f(g, h, spec.functions->f);
    std::vector<GroupFunction> gs;
    for (const auto& t : spec.functions->g)
        gs.emplace_back(g, h, t);
    const auto res = check_weighted_pexider(*spec.alphas, f, gs);
    body["verdict"] = res.decomposition ? "decomposition" : "NONE";
    body["equation_holds"] = res.equation_holds;
    if (res.witness)
        body["witness"] = tuple_indices_json(g, *res.witness);
    body["decomposition"] = res.decomposition ? decomposition_json(*res.decomposition) : ojson("NONE");
    if (res.g_side_consistent)
        body["g_side_consistent"] = *res.g_side_consistent;
    body["homomorphisms"] = res.homomorphisms;
    body["candidates_checked"] = res.candidates_checked;
    ojson rej = ojson::array();
    for (const auto& r : res.rejections)
        rej.push_back(ojson{{"homomorphism", r.homomorphism},
                            {"offset", detail::element_json(h, r.offset)},
                            {"fails_at", detail::element_json(g, r.at)}});
    body["rejections"] = rej;
}

void flatten(const ojson& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    out << "  " << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

Report run(const ProblemSpec& spec, std::optional<std::uint64_t> seed_override) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = seed_override.value_or(spec.seed.value_or(kDefaultSeed));
    Report rep;
    auto& body = rep.body;
    body["schema"] = "1";
    body["command"] = command_name(spec.command);
    body["verdict"] = nullptr;
    switch (spec.command) {
    case Command::CheckInvariance: run_check_invariance(spec, seed, body); break;
    case Command::Shrink: run_shrink(spec, body); break;
    case Command::Characterize: run_characterize(spec, body); break;
    case Command::Verify: run_verify(spec, seed, body); break;
    case Command::Extend: run_extend(spec, body); break;
    case Command::EnumerateFinite: run_enumerate(spec, body); break;
    case Command::WeightedCheck: run_weighted(spec, body); break;
    }
    body["seed"] = seed;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string Report::to_json() const { return body.dump(2) + "\n"; }

std::string Report::to_text() const {
    std::ostringstream out;
    out << "feqn " << body.value("command", "") << ": " << (body["verdict"].is_string() ? body["verdict"].get<std::string>() : body["verdict"].dump())
        << "\n";
    for (const auto& [k, v] : body.items())
        if (k != "verdict" && k != "command")
            flatten(v, k, out);
    out << "  elapsed: " << elapsed_ms << " ms\n";
    return out.str();
}

}  // namespace feqn
