// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/problem.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "feqn/error.hpp"
#include "json_io.hpp"
#include "spec_json.hpp"

namespace feqn {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands{{
    {Command::CheckInvariance, "check-invariance"},
    {Command::Characterize, "characterize"},
    {Command::Verify, "verify"},
    {Command::Extend, "extend"},
    {Command::EnumerateFinite, "enumerate-finite"},
    {Command::WeightedCheck, "weighted-check"},
    {Command::Shrink, "shrink"},
}};

using json = nlohmann::json;
using detail::ParsedDocument;

std::string child(const std::string& ptr, const std::string& key) {
    std::string k;
    for (char c : key)
        k += c == '~' ? std::string("~0") : c == '/' ? std::string("~1") : std::string(1, c);
    return ptr + "/" + k;
}

std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

class Reader {
public:
    explicit Reader(const ParsedDocument& doc) : doc_(doc) {}

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
        std::string where;
        const auto it = doc_.positions.find(ptr);
        if (it != doc_.positions.end())
            where = "line " + std::to_string(it->second.line) + ", column " + std::to_string(it->second.column) + " ";
        throw Error(ErrorCode::Parse, where + "(at " + (ptr.empty() ? std::string("/") : ptr) + "): " + msg);
    }

    const json& object(const json& j, const std::string& ptr, std::initializer_list<std::string_view> allowed) const {
        if (!j.is_object())
            fail(ptr, "expected an object");
        for (const auto& [key, value] : j.items())
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                fail(child(ptr, key), "unknown field \"" + key + "\"");
        return j;
    }

    const json& array(const json& j, const std::string& ptr, bool non_empty = true) const {
        if (!j.is_array())
            fail(ptr, "expected an array");
        if (non_empty && j.empty())
            fail(ptr, "array must not be empty");
        return j;
    }

    const json& field(const json& obj, const std::string& ptr, const std::string& key) const {
        if (!obj.contains(key))
            fail(ptr, "missing field \"" + key + "\"");
        return obj.at(key);
    }

    Rational rational(const json& j, const std::string& ptr) const {
        if (j.is_number_float())
            fail(ptr, "non-rational numeric literal " + j.dump() + "; write exact values as \"p/q\"");
        if (j.is_number_integer())
            return Rational(mpz_class(j.dump(), 10));
        if (!j.is_string())
            fail(ptr, "expected a rational (\"p/q\" or an integer)");
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            fail(ptr, e.what());
        }
    }

    Bound bound(const json& j, const std::string& ptr) const {
        if (j.is_string()) {
            try {
                return Bound::parse(j.get<std::string>());
            } catch (const Error& e) {
                fail(ptr, e.what());
            }
        }
        return Bound(rational(j, ptr));
    }

    Vector rationals(const json& j, const std::string& ptr) const {
        array(j, ptr);
        Vector v;
        for (std::size_t i = 0; i < j.size(); ++i)
            v.push_back(rational(j[i], child(ptr, i)));
        return v;
    }

    Vector nonzero_rationals(const json& j, const std::string& ptr) const {
        Vector v = rationals(j, ptr);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == 0)
                fail(child(ptr, i), "coefficient must be non-zero");
        return v;
    }

    std::vector<Vector> points(const json& j, const std::string& ptr) const {
        array(j, ptr);
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < j.size(); ++i)
            pts.push_back(rationals(j[i], child(ptr, i)));
        return pts;
    }

    std::int64_t integer(const json& j, const std::string& ptr) const {
        if (!j.is_number_integer())
            fail(ptr, "expected an integer");
        return j.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(const json& j, const std::string& ptr) const {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
            fail(ptr, "expected a non-negative integer");
        return j.get<std::uint64_t>();
    }

    Interval interval(const json& j, const std::string& ptr, bool typed) const {
        object(j, ptr, {"type", "lo", "hi"});
        if (typed || j.contains("type"))
            expect_type(j, ptr, "interval");
        try {
            return Interval(bound(field(j, ptr, "lo"), child(ptr, "lo")), bound(field(j, ptr, "hi"), child(ptr, "hi")));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Parse)
                throw;
            fail(ptr, e.what());
        }
    }

    Domain domain(const json& j, const std::string& ptr) const {
        if (!j.is_object())
            fail(ptr, "expected a domain object");
        const auto& type = field(j, ptr, "type");
        if (!type.is_string())
            fail(child(ptr, "type"), "expected a string");
        const auto t = type.get<std::string>();
        if (t == "interval")
            return interval(j, ptr, true);
        if (t == "box") {
            object(j, ptr, {"type", "sides"});
            const auto& sides = array(field(j, ptr, "sides"), child(ptr, "sides"));
            std::vector<Interval> out;
            for (std::size_t i = 0; i < sides.size(); ++i)
                out.push_back(interval(sides[i], child(child(ptr, "sides"), i), false));
            return Box(std::move(out));
        }
        if (t == "cone") {
            object(j, ptr, {"type", "generators"});
            try {
                return Cone(points(field(j, ptr, "generators"), child(ptr, "generators")));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::Parse)
                    throw;
                fail(ptr, e.what());
            }
        }
        fail(child(ptr, "type"), "unknown domain type \"" + t + "\" (expected interval, box or cone)");
    }

    Matrix matrix(const json& j, const std::string& ptr) const {
        const auto rows = points(j, ptr);
        try {
            return Matrix::from_rows(rows);
        } catch (const Error& e) {
            fail(ptr, e.what());
        }
    }

    AffineMap affine(const json& j, const std::string& ptr) const {
        object(j, ptr, {"A", "b"});
        Matrix a = matrix(field(j, ptr, "A"), child(ptr, "A"));
        Vector b = rationals(field(j, ptr, "b"), child(ptr, "b"));
        try {
            return AffineMap(std::move(a), std::move(b));
        } catch (const Error& e) {
            fail(ptr, e.what());
        }
    }

    Vector point_key(const std::string& key, const std::string& ptr) const {
        Vector p;
        std::size_t start = 0;
        for (;;) {
            const auto comma = key.find(',', start);
            const auto part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            try {
                p.push_back(parse_rational(part));
            } catch (const Error& e) {
                fail(ptr, std::string("bad point key: ") + e.what());
            }
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return p;
    }

    PointMap point_map(const json& j, const std::string& ptr) const {
        if (!j.is_object())
            fail(ptr, "expected an object mapping points to values");
        PointMap m;
        std::optional<std::size_t> in_dim, out_dim;
        for (const auto& [key, value] : j.items()) {
            const auto p = child(ptr, key);
            Vector x = point_key(key, p);
            Vector v = value.is_array() ? rationals(value, p) : Vector{rational(value, p)};
            if (in_dim.value_or(x.size()) != x.size() || out_dim.value_or(v.size()) != v.size())
                fail(p, "points and values must have consistent dimensions across the table");
            in_dim = x.size();
            out_dim = v.size();
            if (!m.emplace(std::move(x), std::move(v)).second)
                fail(p, "point listed twice");
        }
        return m;
    }

    FiniteAbelianGroup group(const json& j, const std::string& ptr) const {
        object(j, ptr, {"moduli"});
        const auto& mods = array(field(j, ptr, "moduli"), child(ptr, "moduli"));
        std::vector<std::int64_t> m;
        for (std::size_t i = 0; i < mods.size(); ++i)
            m.push_back(integer(mods[i], child(child(ptr, "moduli"), i)));
        try {
            return FiniteAbelianGroup(std::move(m));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SizeGuard)
                throw;
            fail(ptr, e.what());
        }
    }

    std::size_t element(const json& j, const std::string& ptr, const FiniteAbelianGroup& g) const {
        std::vector<std::int64_t> coords;
        if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i)
                coords.push_back(integer(j[i], child(ptr, i)));
        } else {
            coords.push_back(integer(j, ptr));
        }
        if (coords.size() != g.rank())
            fail(ptr, "element needs " + std::to_string(g.rank()) + " coordinates");
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] < 0 || coords[i] >= g.moduli()[i])
                fail(ptr, "coordinate " + std::to_string(coords[i]) + " is outside Z_" + std::to_string(g.moduli()[i]));
        return g.index(coords);
    }

    std::vector<std::size_t> table(const json& j, const std::string& ptr, const FiniteAbelianGroup& dom,
                                   const FiniteAbelianGroup& cod) const {
        array(j, ptr);
        if (j.size() != dom.order())
            fail(ptr, "table has " + std::to_string(j.size()) + " entries; the group has order " +
                          std::to_string(dom.order()));
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < j.size(); ++i)
            t.push_back(element(j[i], child(ptr, i), cod));
        return t;
    }

private:
    void expect_type(const json& j, const std::string& ptr, const std::string& type) const {
        const auto& t = field(j, ptr, "type");
        if (!t.is_string() || t.get<std::string>() != type)
            fail(child(ptr, "type"), "expected type \"" + type + "\"");
    }

    const ParsedDocument& doc_;
};

struct FieldRule {
    std::vector<std::string_view> required;
    std::vector<std::string_view> optional;
};

FieldRule rule_for(Command c, bool pexider_mode) {
    switch (c) {
    case Command::CheckInvariance:
    case Command::Shrink: return {{"domain", "equation"}, {"seed"}};
    case Command::Characterize: return {{"equation"}, {"seed"}};
    case Command::Verify: return {{"equation", "domain", "candidate"}, {"trials", "seed"}};
    case Command::Extend:
        if (pexider_mode)
            return {{"pexider"}, {"seed"}};
        return {{"equation", "domain", "f"}, {"cover", "seed"}};
    case Command::EnumerateFinite: return {{"group"}, {"codomain", "functions", "seed"}};
    case Command::WeightedCheck: return {{"group", "alphas", "functions"}, {"codomain", "seed"}};
    }
    return {};
}

}  // namespace

std::string_view command_name(Command c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c)
            return name;
    return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [cmd, n] : kCommands)
        if (n == name)
            return cmd;
    return std::nullopt;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.command == b.command && a.domain == b.domain && a.equation == b.equation && a.candidate == b.candidate &&
           a.trials == b.trials && a.seed == b.seed && a.f == b.f && a.cover == b.cover && a.pexider == b.pexider &&
           a.group == b.group && a.codomain == b.codomain && a.alphas == b.alphas && a.functions == b.functions;
}

ProblemSpec parse_spec(std::string_view text, std::optional<Command> command) {
    const auto doc = detail::parse_document(text);
    const Reader rd(doc);
    const json& root = doc.value;
    rd.object(root, "",
              {"command", "domain", "equation", "candidate", "trials", "seed", "f", "cover", "pexider", "group",
               "codomain", "alphas", "functions"});

    ProblemSpec spec;
    if (root.contains("command")) {
        const auto& c = root["command"];
        const auto parsed = c.is_string() ? parse_command(c.get<std::string>()) : std::nullopt;
        if (!parsed)
            rd.fail("/command", "unknown command " + c.dump());
        if (command && *command != *parsed)
            rd.fail("/command", "file names command \"" + std::string(command_name(*parsed)) +
                                    "\" but \"" + std::string(command_name(*command)) + "\" was requested");
        command = parsed;
    }
    if (!command)
        throw Error(ErrorCode::Parse, "no command given (pass one on the command line or set \"command\")");
    spec.command = *command;

    const auto rule = rule_for(spec.command, root.contains("pexider"));
    for (const auto& [key, value] : root.items()) {
        if (key == "command")
            continue;
        const bool known = std::find(rule.required.begin(), rule.required.end(), key) != rule.required.end() ||
                           std::find(rule.optional.begin(), rule.optional.end(), key) != rule.optional.end();
        if (!known)
            rd.fail("/" + key, "field \"" + key + "\" is not used by command " + std::string(command_name(spec.command)));
    }
    for (const auto& key : rule.required)
        if (!root.contains(std::string(key)))
            rd.fail("", "command " + std::string(command_name(spec.command)) + " needs field \"" + std::string(key) + "\"");

    if (root.contains("seed"))
        spec.seed = rd.unsigned_integer(root["seed"], "/seed");
    if (root.contains("trials")) {
        spec.trials = rd.unsigned_integer(root["trials"], "/trials");
        if (*spec.trials == 0)
            rd.fail("/trials", "trials must be positive");
    }
    if (root.contains("domain"))
        spec.domain = rd.domain(root["domain"], "/domain");

    if (root.contains("equation")) {
        const auto& e = rd.object(root["equation"], "/equation", {"alphas", "betas"});
        EquationInput eq;
        eq.alphas = rd.nonzero_rationals(rd.field(e, "/equation", "alphas"), "/equation/alphas");
        if (e.contains("betas"))
            eq.betas = rd.nonzero_rationals(e["betas"], "/equation/betas");
        const bool needs_betas = spec.command == Command::Characterize || spec.command == Command::Verify ||
                                 spec.command == Command::Extend;
        if (needs_betas && !eq.betas)
            rd.fail("/equation", "command " + std::string(command_name(spec.command)) + " needs \"betas\"");
        if (eq.alphas.size() < 2)
            rd.fail("/equation/alphas", "the equation needs n >= 2 coefficients");
        if (eq.betas && eq.betas->size() != eq.alphas.size())
            rd.fail("/equation/betas", "betas must have as many entries as alphas");
        spec.equation = std::move(eq);
    }

    if (root.contains("candidate"))
        spec.candidate = rd.affine(root["candidate"], "/candidate");

    if (root.contains("f")) {
        const auto& f = rd.object(root["f"], "/f", {"affine", "table"});
        if (f.size() != 1)
            rd.fail("/f", "give exactly one of \"affine\" or \"table\"");
        if (f.contains("affine"))
            spec.f = rd.affine(f["affine"], "/f/affine");
        else
            spec.f = rd.point_map(f["table"], "/f/table");
    }

    if (root.contains("cover")) {
        const auto& c = rd.object(root["cover"], "/cover", {"anchors", "radius"});
        CoverInput cover;
        if (c.contains("anchors"))
            cover.anchors = rd.points(c["anchors"], "/cover/anchors");
        if (c.contains("radius")) {
            cover.radius = rd.rational(c["radius"], "/cover/radius");
            if (*cover.radius <= 0)
                rd.fail("/cover/radius", "radius must be positive");
        }
        spec.cover = std::move(cover);
    }

    if (root.contains("pexider")) {
        const std::string ptr = "/pexider";
        const auto& p = rd.object(root["pexider"], ptr, {"patches", "f", "g", "samples"});
        PexiderInput in;
        const auto& patches = rd.array(rd.field(p, ptr, "patches"), ptr + "/patches");
        for (std::size_t i = 0; i < patches.size(); ++i) {
            const auto pp = child(ptr + "/patches", i);
            rd.object(patches[i], pp, {"base", "radius"});
            auto base = rd.points(rd.field(patches[i], pp, "base"), pp + "/base");
            auto radius = rd.rational(rd.field(patches[i], pp, "radius"), pp + "/radius");
            try {
                in.patches.emplace_back(std::move(base), std::move(radius));
            } catch (const Error& e) {
                rd.fail(pp, e.what());
            }
        }
        in.tables.f_values = rd.point_map(rd.field(p, ptr, "f"), ptr + "/f");
        const auto& gs = rd.array(rd.field(p, ptr, "g"), ptr + "/g");
        for (std::size_t i = 0; i < gs.size(); ++i)
            in.tables.g_values.push_back(rd.point_map(gs[i], child(ptr + "/g", i)));
        if (p.contains("samples")) {
            const auto& ss = rd.array(p["samples"], ptr + "/samples", false);
            for (std::size_t i = 0; i < ss.size(); ++i)
                in.samples.push_back(rd.points(ss[i], child(ptr + "/samples", i)));
        }
        spec.pexider = std::move(in);
    }

    if (root.contains("group"))
        spec.group = rd.group(root["group"], "/group");
    if (root.contains("codomain"))
        spec.codomain = rd.group(root["codomain"], "/codomain");

    if (root.contains("alphas")) {
        const auto& a = rd.array(root["alphas"], "/alphas");
        std::vector<std::int64_t> alphas;
        for (std::size_t i = 0; i < a.size(); ++i) {
            alphas.push_back(rd.integer(a[i], child("/alphas", i)));
            if (alphas.back() == 0)
                rd.fail(child("/alphas", i), "coefficient must be non-zero");
        }
        if (alphas.size() < 2)
            rd.fail("/alphas", "the equation needs n >= 2 coefficients");
        spec.alphas = std::move(alphas);
    }

    if (root.contains("functions")) {
        const auto& fn = rd.object(root["functions"], "/functions", {"f", "g"});
        const auto& dom = *spec.group;
        const auto& cod = spec.codomain ? *spec.codomain : dom;
        FiniteFunctions out;
        out.f = rd.table(rd.field(fn, "/functions", "f"), "/functions/f", dom, cod);
        const auto& gs = rd.array(rd.field(fn, "/functions", "g"), "/functions/g");
        if (gs.size() < 2)
            rd.fail("/functions/g", "need n >= 2 functions g_i");
        for (std::size_t i = 0; i < gs.size(); ++i)
            out.g.push_back(rd.table(gs[i], child("/functions/g", i), dom, cod));
        if (spec.alphas && spec.alphas->size() != out.g.size())
            rd.fail("/alphas", "got " + std::to_string(spec.alphas->size()) + " coefficients for " +
                                   std::to_string(out.g.size()) + " functions g_i");
        spec.functions = std::move(out);
    }

    if (spec.command == Command::Shrink && spec.domain && !std::holds_alternative<Interval>(*spec.domain))
        rd.fail("/domain", "shrink works on intervals only");
    return spec;
}

std::string render_spec(const ProblemSpec& spec) {
    using detail::to_json;
    nlohmann::ordered_json j;
    j["command"] = command_name(spec.command);
    if (spec.domain)
        j["domain"] = to_json(*spec.domain);
    if (spec.equation) {
        j["equation"]["alphas"] = to_json(spec.equation->alphas);
        if (spec.equation->betas)
            j["equation"]["betas"] = to_json(*spec.equation->betas);
    }
    if (spec.candidate)
        j["candidate"] = to_json(*spec.candidate);
    if (spec.trials)
        j["trials"] = *spec.trials;
    if (spec.seed)
        j["seed"] = *spec.seed;
    if (spec.f) {
        if (const auto* a = std::get_if<AffineMap>(&*spec.f))
            j["f"]["affine"] = to_json(*a);
        else
            j["f"]["table"] = to_json(std::get<PointMap>(*spec.f));
    }
    if (spec.cover) {
        j["cover"] = nlohmann::ordered_json::object();
        if (spec.cover->anchors)
            j["cover"]["anchors"] = to_json(*spec.cover->anchors);
        if (spec.cover->radius)
            j["cover"]["radius"] = to_string(*spec.cover->radius);
    }
    if (spec.pexider) {
        auto& p = j["pexider"];
        p["patches"] = nlohmann::ordered_json::array();
        for (const auto& patch : spec.pexider->patches)
            p["patches"].push_back({{"base", to_json(patch.base)}, {"radius", to_string(patch.radius)}});
        p["f"] = to_json(spec.pexider->tables.f_values);
        p["g"] = nlohmann::ordered_json::array();
        for (const auto& g : spec.pexider->tables.g_values)
            p["g"].push_back(to_json(g));
        if (!spec.pexider->samples.empty()) {
            p["samples"] = nlohmann::ordered_json::array();
            for (const auto& s : spec.pexider->samples)
                p["samples"].push_back(to_json(s));
        }
    }
    if (spec.group)
        j["group"]["moduli"] = spec.group->moduli();
    if (spec.codomain)
        j["codomain"]["moduli"] = spec.codomain->moduli();
    if (spec.alphas)
        j["alphas"] = *spec.alphas;
    if (spec.functions && spec.group) {
        const auto& cod = spec.codomain ? *spec.codomain : *spec.group;
        j["functions"]["f"] = detail::table_json(cod, spec.functions->f);
        j["functions"]["g"] = nlohmann::ordered_json::array();
        for (const auto& g : spec.functions->g)
            j["functions"]["g"].push_back(detail::table_json(cod, g));
    }
    return j.dump(2) + "\n";
}

}  // namespace feqn
