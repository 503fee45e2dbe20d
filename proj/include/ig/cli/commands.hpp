#pragma once

#include "ig/cli/document.hpp"
#include "ig/laws.hpp"
#include "ig/zeta.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ig::cli {

using Json = nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

struct Flags {
    int order = kDefaultOrder;
    std::optional<std::uint64_t> seed;
    std::size_t samples = 100;
    double tolerance = 1e-9;
    std::string mode = "exact";         // exact | float
    std::string convention = "degree";  // degree | literal
    std::string suite;
    std::vector<std::string> cut;
};

struct Outcome {
    Json report;
    int exit_code = 0;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> c = {"zeta",       "exec",      "measure", "zeta-kernel", "check-cocycle",
                                               "check-trefoil", "check-orth", "typecheck", "exp",      "check-laws"};
    return c;
}

namespace detail {

inline Json scalar_json(const GaussRational& s) { return format_weight(s); }
inline Json scalar_json(const Rational& s) { return format_real(s); }
inline Json scalar_json(const Complex& s) {
    if (s.imag() == 0) return s.real();
    return Json::array({s.real(), s.imag()});
}
inline Json scalar_json(double s) { return s; }

template <class S>
Json series_json(const TruncatedSeries<S>& s) {
    Json a = Json::array();
    for (const auto& c : s.coeffs()) a.push_back(scalar_json(c));
    return a;
}

template <class S>
Json graph_json(const WeightedGraph<S>& g) {
    Json j;
    j["vertices"] = g.vertices();
    Json es = Json::array();
    for (const auto& e : g.edges()) es.push_back(Json::array({e.source, e.target, scalar_json(e.weight)}));
    j["edges"] = es;
    return j;
}

template <class R>
Json kernel_json(const SubMarkovKernel<std::string, R>& k) {
    Json j;
    j["source"] = k.source();
    j["target"] = k.target();
    Json es = Json::array();
    for (const auto& [x, row] : k.rows())
        for (const auto& [y, w] : row) es.push_back(Json::array({x, y, scalar_json(w)}));
    j["entries"] = es;
    return j;
}

inline Json sites_json(const std::set<Site>& s) {
    Json a = Json::array();
    for (const auto& x : s) a.push_back(x.str());
    return a;
}

inline Json object_json(const ProofObject& o) {
    Json j;
    j["source"] = sites_json(o.source());
    j["target"] = sites_json(o.target());
    j["states"] = o.states();
    Json es = Json::array();
    for (const auto& [a, ea, b, eb, w] : o.entries()) es.push_back(Json::array({a.str(), ea, b.str(), eb, format_real(w)}));
    j["entries"] = es;
    j["fn"] = o.fn().str();
    return j;
}

template <class S>
Json measurement_json(const Measurement<S>& m) {
    Json j;
    j["infinite"] = m.infinite;
    j["zeta_inverse"] = scalar_json(m.zeta_inverse);
    if (!m.infinite) j["value"] = Json::array({m.value.real(), m.value.imag()});
    return j;
}

inline Json graphing_relation_json(const GraphingRep<GaussRational>& g) {
    Json es = Json::array();
    for (const auto& [xy, w] : induced_relation(g)) es.push_back(Json::array({xy.first, xy.second, format_weight(w)}));
    return es;
}

inline Json law_json(const laws::LawCount& c) {
    Json j;
    j["law"] = c.law;
    j["cases"] = c.cases;
    j["violations"] = c.violations;
    j["counterexamples"] = c.counterexamples;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline WeightedGraph<Complex> to_float(const WeightedGraph<GaussRational>& g) {
    return g.map_weights<Complex>([](const GaussRational& w) { return w.to_complex(); });
}
inline SubMarkovKernel<std::string, double> to_float(const SubMarkovKernel<std::string, Rational>& k) {
    return k.map_weights<double>([](const Rational& w) { return w.get_d(); });
}

enum class Kind { Graph, Graphing, Kernel, Object, Type };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Graph: return "graph";
        case Kind::Graphing: return "graphing";
        case Kind::Kernel: return "kernel";
        case Kind::Object: return "object";
        default: return "type";
    }
}

// first allowed section declaring `name`
inline Kind resolve(const Document& d, const std::string& name, std::initializer_list<Kind> allowed) {
    for (auto k : allowed) {
        bool found = false;
        switch (k) {
            case Kind::Graph: found = d.graphs.count(name) > 0; break;
            case Kind::Graphing: found = d.graphings.count(name) > 0; break;
            case Kind::Kernel: found = d.kernels.count(name) > 0; break;
            case Kind::Object: found = d.objects.count(name) > 0; break;
            case Kind::Type: found = d.types.count(name) > 0; break;
        }
        if (found) return k;
    }
    std::string want;
    for (auto k : allowed) want += std::string(want.empty() ? "" : " or ") + kind_name(k);
    throw UsageError("no " + want + " named '" + name + "'");
}

inline void arity(const std::string& cmd, const std::vector<std::string>& names, std::size_t lo, std::size_t hi) {
    if (names.size() < lo || names.size() > hi)
        throw UsageError(cmd + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) + " name(s), got " +
                         std::to_string(names.size()));
}

inline void same_kind(const Document& d, const std::vector<std::string>& names, Kind k) {
    for (const auto& n : names) resolve(d, n, {k});
}

inline bool exact(const Flags& f) { return f.mode == "exact"; }

inline void exact_only(const Flags& f, const std::string& what) {
    if (!exact(f)) throw UsageError(what + " are exact-only; drop --mode float");
}

inline ZetaConvention convention(const Flags& f) {
    return f.convention == "literal" ? ZetaConvention::LiteralWeighted : ZetaConvention::DegreeTracking;
}

template <class S>
void zeta_graph(Json& out, const WeightedGraph<S>& g, const Flags& f) {
    out["coefficients"] = series_json(zeta_series(g, f.order, convention(f)));
    out["rational"] = zeta_det(g).str();
    out["closed_walks"] = Json::array();
    for (const auto& c : closed_walk_counts(g, f.order)) out["closed_walks"].push_back(scalar_json(c));
}

template <class R>
void zeta_kernel_json(Json& out, const KernelZeta<R>& z) {
    out["log_coefficients"] = series_json(z.log.series());
    out["coefficients"] = series_json(series_exp(z.log));
    out["rational"] = z.base.str();
}

inline Outcome cmd_zeta(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("zeta", names, 1, 1);
    Outcome o;
    auto& out = o.report["outputs"];
    auto k = resolve(d, names[0], {Kind::Graph, Kind::Graphing, Kind::Kernel});
    out["kind"] = kind_name(k);
    if (k == Kind::Graph) {
        out["convention"] = f.convention;
        if (exact(f)) zeta_graph(out, d.graphs.at(names[0]), f);
        else zeta_graph(out, to_float(d.graphs.at(names[0])), f);
    } else if (k == Kind::Graphing) {
        const auto& g = d.graphings.at(names[0]).graphing;
        if (!is_deterministic(g)) throw UsageError("the Artin-Mazur zeta needs a deterministic graphing");
        auto l = artin_mazur_zeta(g.space(), to_partial_map(g), f.order);
        out["log_coefficients"] = series_json(l.series());
        out["coefficients"] = series_json(series_exp(l));
    } else if (exact(f)) {
        zeta_kernel_json(out, kernel_zeta(d.kernels.at(names[0]).kernel, f.order));
    } else {
        zeta_kernel_json(out, kernel_zeta(to_float(d.kernels.at(names[0]).kernel), f.order));
    }
    return o;
}

inline Outcome cmd_exec(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("exec", names, 1, 2);
    Outcome o;
    auto& out = o.report["outputs"];
    auto k = resolve(d, names[0], {Kind::Graph, Kind::Kernel, Kind::Graphing, Kind::Object});
    out["kind"] = kind_name(k);
    if (names.size() == 1) {
        if (k != Kind::Kernel) throw UsageError("exec with one name needs a kernel");
        if (exact(f)) out["kernel"] = kernel_json(exec_kernel(d.kernels.at(names[0]).kernel));
        else out["kernel"] = kernel_json(exec_kernel(to_float(d.kernels.at(names[0]).kernel)));
        return o;
    }
    same_kind(d, names, k);
    const auto &a = names[0], &b = names[1];
    switch (k) {
        case Kind::Graph:
            if (exact(f)) out["graph"] = graph_json(execute(d.graphs.at(a), d.graphs.at(b)));
            else out["graph"] = graph_json(execute(to_float(d.graphs.at(a)), to_float(d.graphs.at(b))));
            break;
        case Kind::Kernel:
            if (exact(f)) out["kernel"] = kernel_json(plug(d.kernels.at(a).kernel, d.kernels.at(b).kernel));
            else out["kernel"] = kernel_json(plug(to_float(d.kernels.at(a).kernel), to_float(d.kernels.at(b).kernel)));
            break;
        case Kind::Graphing: {
            exact_only(f, "graphing executions");
            std::set<std::string> cut(f.cut.begin(), f.cut.end());
            out["cut"] = cut;
            auto e = execute_graphing<Rational>(d.graphings.at(a).graphing, d.graphings.at(b).graphing, cut);
            out["relation"] = graphing_relation_json(e);
            out["deterministic"] = is_deterministic(e);
            out["subprobabilistic"] = is_subprobabilistic(e);
            break;
        }
        default:
            exact_only(f, "proof-objects");
            out["object"] = object_json(po_plug(d.objects.at(a).object, d.objects.at(b).object));
    }
    return o;
}

inline Outcome cmd_measure(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("measure", names, 2, 2);
    Outcome o;
    auto& out = o.report["outputs"];
    auto k = resolve(d, names[0], {Kind::Graph, Kind::Graphing});
    same_kind(d, names, k);
    out["kind"] = kind_name(k);
    if (k == Kind::Graph) {
        if (exact(f)) out["measurement"] = measurement_json(measurement(d.graphs.at(names[0]), d.graphs.at(names[1])));
        else out["measurement"] = measurement_json(measurement(to_float(d.graphs.at(names[0])), to_float(d.graphs.at(names[1]))));
        return o;
    }
    const auto& gf = d.graphings.at(names[0]).graphing;
    const auto& gg = d.graphings.at(names[1]).graphing;
    if (!is_deterministic(gf) || !is_deterministic(gg)) throw UsageError("graphing measurement needs deterministic graphings");
    ig::detail::same_space(gf.space(), gg.space());
    auto pf = to_partial_map(gf), pg = to_partial_map(gg);
    Json orbits = Json::array();
    for (const auto& ob : alternating_orbits(gf.space(), pf, pg))
        orbits.push_back({{"points", ob.points}, {"mass", format_real(ob.mass)}, {"length", ob.length}});
    out["orbits"] = orbits;
    out["constant_one"] = format_real(graphing_measurement<Rational>(gf.space(), pf, pg, [](const Rational&) { return Rational(1); }));
    out["log_artin_mazur"] = series_json(artin_mazur_zeta(gf.space(), then(pf, pg), f.order).series());
    return o;
}

inline Outcome cmd_zeta_kernel(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("zeta-kernel", names, 1, 2);
    same_kind(d, names, Kind::Kernel);
    Outcome o;
    auto& out = o.report["outputs"];
    if (exact(f)) {
        const auto& a = d.kernels.at(names[0]).kernel;
        zeta_kernel_json(out, names.size() == 1 ? kernel_zeta(a, f.order) : zeta_measurement(a, d.kernels.at(names[1]).kernel, f.order));
    } else {
        auto a = to_float(d.kernels.at(names[0]).kernel);
        zeta_kernel_json(out, names.size() == 1 ? kernel_zeta(a, f.order)
                                                : zeta_measurement(a, to_float(d.kernels.at(names[1]).kernel), f.order));
    }
    return o;
}

template <class S>
void cocycle_json(Outcome& o, const CocycleReport<S>& r) {
    auto& out = o.report["outputs"];
    out["holds"] = r.holds;
    out["holds_at_one"] = r.holds_at_one;
    out["max_coefficient_gap"] = r.max_coefficient_gap;
    out["lhs"] = series_json(r.lhs);
    out["rhs"] = series_json(r.rhs);
    out["lhs_rational"] = r.lhs_rational.str();
    out["rhs_rational"] = r.rhs_rational.str();
    o.report["pass"] = r.holds;
    o.exit_code = r.holds ? 0 : 1;
}

template <class R>
void kernel_cocycle_json(Outcome& o, const KernelCocycleReport<R>& r) {
    auto& out = o.report["outputs"];
    out["holds"] = r.holds;
    out["holds_at_one"] = r.holds_at_one;
    out["max_coefficient_gap"] = r.max_coefficient_gap;
    out["lhs"] = series_json(series_exp(r.lhs_log));
    out["rhs"] = series_json(series_exp(r.rhs_log));
    out["lhs_rational"] = r.lhs.str();
    out["rhs_rational"] = r.rhs.str();
    o.report["pass"] = r.holds;
    o.exit_code = r.holds ? 0 : 1;
}

inline Outcome cmd_check_cocycle(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("check-cocycle", names, 3, 3);
    auto k = resolve(d, names[0], {Kind::Graph, Kind::Kernel});
    same_kind(d, names, k);
    Outcome o;
    o.report["outputs"]["kind"] = kind_name(k);
    if (k == Kind::Graph) {
        const auto &a = d.graphs.at(names[0]), &b = d.graphs.at(names[1]), &c = d.graphs.at(names[2]);
        if (exact(f)) cocycle_json(o, cocycle_check(a, b, c, f.order));
        else cocycle_json(o, cocycle_check(to_float(a), to_float(b), to_float(c), f.order));
    } else {
        const auto &a = d.kernels.at(names[0]).kernel, &b = d.kernels.at(names[1]).kernel, &c = d.kernels.at(names[2]).kernel;
        if (exact(f)) kernel_cocycle_json(o, kernel_cocycle_check(a, b, c, f.order));
        else kernel_cocycle_json(o, kernel_cocycle_check(to_float(a), to_float(b), to_float(c), f.order));
    }
    return o;
}

template <class S>
void trefoil_json(Outcome& o, const WeightedGraph<S>& a, const WeightedGraph<S>& b, const WeightedGraph<S>& c, double tol) {
    auto lhs = measurement(a, execute(b, c)) + measurement(b, c);
    auto rhs = measurement(b, execute(c, a)) + measurement(c, a);
    bool ok = measurement_equal(lhs, rhs, tol);
    if constexpr (scalar_traits<S>::exact) ok = ok && (lhs.infinite || lhs.zeta_inverse == rhs.zeta_inverse);
    auto& out = o.report["outputs"];
    out["lhs"] = measurement_json(lhs);
    out["rhs"] = measurement_json(rhs);
    out["holds"] = ok;
    o.report["pass"] = ok;
    o.exit_code = ok ? 0 : 1;
}

inline Outcome cmd_check_trefoil(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("check-trefoil", names, 3, 3);
    same_kind(d, names, Kind::Graph);
    Outcome o;
    const auto &a = d.graphs.at(names[0]), &b = d.graphs.at(names[1]), &c = d.graphs.at(names[2]);
    if (exact(f)) trefoil_json(o, a, b, c, f.tolerance);
    else trefoil_json(o, to_float(a), to_float(b), to_float(c), f.tolerance);
    return o;
}

inline Outcome cmd_check_orth(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("check-orth", names, 2, 2);
    same_kind(d, names, Kind::Object);
    exact_only(f, "proof-objects");
    const auto &a = d.objects.at(names[0]).object, &b = d.objects.at(names[1]).object;
    auto p = d.antipode_or_default();
    Outcome o;
    auto& out = o.report["outputs"];
    auto m = po_zeta_measurement(a, b);
    out["antipode"] = p.kind == Antipode::Kind::AtOneNotZeroOne ? "at-one" : "nonvanishing " + format_real(d.antipode_radius);
    out["zeta_measurement"] = m.str();
    out["orthogonal"] = orthogonal(a, b, p);
    return o;
}

inline Outcome cmd_typecheck(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    arity("typecheck", names, 2, 3);
    exact_only(f, "proof-objects");
    resolve(d, names[0], {Kind::Object});
    for (std::size_t i = 1; i < names.size(); ++i) resolve(d, names[i], {Kind::Type});
    const auto& x = d.objects.at(names[0]).object;
    auto p = d.antipode_or_default();
    Outcome o;
    auto& out = o.report["outputs"];
    if (names.size() == 2) {
        out["judgement"] = names[0] + " : " + names[1];
        out["member"] = member(x, d.type(names[1]), p);
    } else {
        out["judgement"] = names[0] + " : " + names[1] + " -o " + names[2];
        out["member"] = impl_membership(x, d.type(names[1]), d.type(names[2]), p);
    }
    return o;
}

inline void disjoint_ends(const ProofObject& a, const std::string& what) {
    for (const auto& s : a.source())
        if (a.target().count(s)) throw UsageError(what + " needs disjoint source and target sites; '" + s.str() + "' is in both");
}

inline Outcome cmd_exp(const Document& d, const std::vector<std::string>& names, const Flags& f) {
    exact_only(f, "proof-objects");
    if (names.empty()) throw UsageError("exp needs an operation: bang, der, dig or promote");
    const std::string op = names[0];
    std::vector<std::string> rest(names.begin() + 1, names.end());
    Outcome o;
    auto& out = o.report["outputs"];
    out["operation"] = op;
    auto law = [&](bool ok) {
        out["holds"] = ok;
        o.report["pass"] = ok;
        o.exit_code = ok ? 0 : 1;
    };
    if (op == "bang") {
        arity("exp bang", rest, 1, 1);
        same_kind(d, rest, Kind::Object);
        out["object"] = object_json(bang(d.objects.at(rest[0]).object));
    } else if (op == "der") {
        arity("exp der", rest, 1, 1);
        same_kind(d, rest, Kind::Object);
        const auto& a = d.objects.at(rest[0]).object;
        if (!a.balanced()) throw UsageError("dereliction acts on balanced objects");
        disjoint_ends(a, "dereliction");
        auto res = po_plug(bang(a, {0}), dereliction_object(a.source(), a.target(), a.states(), {0}));
        out["object"] = object_json(res);
        law(iso_equal(res, dagger(a, {cantor_pair(0, 0)}), [](State s) -> std::optional<State> {
            auto [q, rest2] = cantor_unpair(s);
            auto [e, e2] = cantor_unpair(rest2);
            return cantor_pair(e, cantor_pair(q, e2));
        }));
    } else if (op == "dig") {
        arity("exp dig", rest, 1, 1);
        same_kind(d, rest, Kind::Object);
        const auto& a = d.objects.at(rest[0]).object;
        if (!a.balanced()) throw UsageError("digging acts on balanced objects");
        disjoint_ends(a, "digging");
        auto res = po_plug(bang(a, {0}), digging_object(a.source(), a.target(), a.states(), {0}, {0}));
        out["object"] = object_json(res);
        law(iso_equal(res, dagger(bang(bang(a, {0}), {0}), {0}), [](State s) -> std::optional<State> {
            auto [q, e2] = cantor_unpair(s);
            return cantor_pair(e2, q);
        }));
    } else if (op == "promote") {
        arity("exp promote", rest, 2, 2);
        same_kind(d, rest, Kind::Object);
        const auto &a = d.objects.at(rest[0]).object, &g = d.objects.at(rest[1]).object;
        auto res = promotion_pipeline(g, a);
        out["object"] = object_json(res);
        law(iso_equal(res, dagger(bang(po_plug(a, g), {0}), promotion_passengers()),
                      [](State s) -> std::optional<State> { return cantor_pair(0, s); }) &&
            res.fn() == po_plug(a, g).fn());
    } else {
        throw UsageError("unknown exponential operation '" + op + "'");
    }
    return o;
}

inline Outcome cmd_check_laws(const Flags& f) {
    if (f.suite.empty()) throw UsageError("check-laws needs --suite (one of zeta, graph, kernel, graphing, duality, exponentials, all)");
    std::vector<std::string> suites;
    if (f.suite == "all") suites = laws::suite_names();
    else if (std::find(laws::suite_names().begin(), laws::suite_names().end(), f.suite) != laws::suite_names().end())
        suites = {f.suite};
    else throw UsageError("unknown suite '" + f.suite + "'");
    Outcome o;
    Json arr = Json::array();
    bool pass = true;
    for (const auto& s : suites)
        for (const auto& c : laws::run_suite(s, f.seed.value_or(0), f.samples)) {
            pass = pass && c.pass();
            Json j = law_json(c);
            j["suite"] = s;
            arr.push_back(j);
        }
    o.report["outputs"]["laws"] = arr;
    o.report["pass"] = pass;
    o.exit_code = pass ? 0 : 1;
    return o;
}

}  // namespace detail

// dispatch; UsageError, ParseError and module errors propagate to the caller
inline Outcome run(const std::string& command, const Document& doc, const std::vector<std::string>& names, const Flags& flags) {
    if (flags.mode != "exact" && flags.mode != "float") throw UsageError("--mode must be exact or float");
    if (flags.convention != "degree" && flags.convention != "literal") throw UsageError("--convention must be degree or literal");
    if (flags.order < 1) throw UsageError("--order must be at least 1");
    Outcome o;
    if (command == "zeta") o = detail::cmd_zeta(doc, names, flags);
    else if (command == "exec") o = detail::cmd_exec(doc, names, flags);
    else if (command == "measure") o = detail::cmd_measure(doc, names, flags);
    else if (command == "zeta-kernel") o = detail::cmd_zeta_kernel(doc, names, flags);
    else if (command == "check-cocycle") o = detail::cmd_check_cocycle(doc, names, flags);
    else if (command == "check-trefoil") o = detail::cmd_check_trefoil(doc, names, flags);
    else if (command == "check-orth") o = detail::cmd_check_orth(doc, names, flags);
    else if (command == "typecheck") o = detail::cmd_typecheck(doc, names, flags);
    else if (command == "exp") o = detail::cmd_exp(doc, names, flags);
    else if (command == "check-laws") o = detail::cmd_check_laws(flags);
    else throw UsageError("unknown command '" + command + "'");

    Json report;
    report["schema"] = 1;
    report["command"] = command;
    report["inputs"] = names;
    Json fl;
    fl["order"] = flags.order;
    fl["mode"] = flags.mode;
    fl["convention"] = flags.convention;
    fl["tolerance"] = flags.tolerance;
    if (flags.seed) fl["seed"] = *flags.seed;
    if (command == "check-laws") {
        fl["suite"] = flags.suite;
        fl["samples"] = flags.samples;
    }
    if (!flags.cut.empty()) fl["cut"] = flags.cut;
    report["flags"] = fl;
    report["outputs"] = o.report["outputs"];
    report["pass"] = o.report.contains("pass") ? o.report["pass"] : Json(o.exit_code == 0);
    o.report = std::move(report);
    return o;
}

inline Json error_report(const std::string& command, const std::string& kind, const std::string& message) {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    j["error"] = {{"kind", kind}, {"message", message}};
    j["pass"] = false;
    return j;
}

}  // namespace ig::cli
