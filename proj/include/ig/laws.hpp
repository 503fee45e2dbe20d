#pragma once

// randomized law suites shared by the CLI (check-laws) and the acceptance binary

#include "ig/graph.hpp"
#include "ig/graphing.hpp"
#include "ig/kernel.hpp"
#include "ig/logic.hpp"
#include "ig/random.hpp"
#include "ig/zeta.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ig::laws {

struct LawCount {
    LawCount(std::string name = {}) : law(std::move(name)) {}

    std::string law;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::vector<std::size_t> counterexamples;  // case indices, first few only
    std::string note;

    bool pass() const { return violations == 0; }
    void record(std::size_t index, bool ok) {
        ++cases;
        if (ok) return;
        ++violations;
        if (counterexamples.size() < 5) counterexamples.push_back(index);
    }
};

using sample::case_rng;

inline LawCount zeta_det_identity(std::uint64_t seed, std::size_t n, int order = 12) {
    LawCount c{"zeta-det"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto g = sample::graph<GaussRational>(rng, 6, 10);
        c.record(i, zeta_series(g, order) == rational_to_series(zeta_det(g), order));
    }
    return c;
}

inline std::vector<LawCount> graph_cocycle(std::uint64_t seed, std::size_t n, int order = 12) {
    LawCount series{"graph-cocycle-series"}, one{"graph-cocycle-at-one"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto t = sample::admissible_triple<GaussRational>(rng);
        auto r = cocycle_check(t.f, t.g, t.h, order);
        series.record(i, r.holds);
        one.record(i, r.holds_at_one);
    }
    return {series, one};
}

// ⟦F,G∷H⟧ + ⟦G,H⟧ = ⟦G,H∷F⟧ + ⟦H,F⟧ with the default m, exact and in double
inline std::vector<LawCount> trefoil(std::uint64_t seed, std::size_t n) {
    LawCount exact{"trefoil-exact"}, fl{"trefoil-float"};
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto t = sample::admissible_triple<GaussRational>(rng);
        auto lhs = measurement(t.f, execute(t.g, t.h)) + measurement(t.g, t.h);
        auto rhs = measurement(t.g, execute(t.h, t.f)) + measurement(t.h, t.f);
        if (lhs.infinite || rhs.infinite) {
            ++skipped;
            exact.record(i, lhs.infinite == rhs.infinite);
            continue;
        }
        exact.record(i, lhs.zeta_inverse == rhs.zeta_inverse && measurement_equal(lhs, rhs));
        auto f = t.f.template map_weights<Complex>([](const GaussRational& w) { return w.to_complex(); });
        auto g = t.g.template map_weights<Complex>([](const GaussRational& w) { return w.to_complex(); });
        auto h = t.h.template map_weights<Complex>([](const GaussRational& w) { return w.to_complex(); });
        auto fl_l = measurement(f, execute(g, h)) + measurement(g, h);
        auto fl_r = measurement(g, execute(h, f)) + measurement(h, f);
        fl.record(i, measurement_equal(fl_l, fl_r, 1e-9));
    }
    exact.note = std::to_string(skipped) + " instances with an infinite side";
    return {exact, fl};
}

inline std::vector<LawCount> exec_kernel_laws(std::uint64_t seed, std::size_t n) {
    LawCount sub{"exec-kernel-submarkov"}, oracle{"exec-kernel-oracle"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto k = sample::kernel<Rational>(rng, 10);
        auto e = exec_kernel(k);
        bool ok = true;
        for (const auto& [x, row] : e.rows()) ok = ok && e.row_sum(x) <= 1;
        sub.record(i, ok);
        auto closed = e.template map_weights<double>([](const Rational& w) { return w.get_d(); });
        oracle.record(i, max_entry_gap(closed, exec_kernel_series(k, 10000)) <= 1e-9);
    }
    return {sub, oracle};
}

inline std::vector<LawCount> kernel_cocycle(std::uint64_t seed, std::size_t n, int order = 12) {
    LawCount series{"kernel-cocycle-series"}, one{"kernel-cocycle-at-one"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto t = sample::general_position_triple<Rational>(rng);
        auto r = kernel_cocycle_check(t.k0, t.k1, t.k2, order);
        series.record(i, r.holds);
        one.record(i, r.holds_at_one);
    }
    return {series, one};
}

inline std::vector<LawCount> kernel_assoc_commute(std::uint64_t seed, std::size_t n) {
    LawCount assoc{"kernel-associativity"}, comm{"kernel-commutativity"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto t = sample::general_position_triple<Rational>(rng);
        assoc.record(i, plug(plug(t.k0, t.k1), t.k2) == plug(t.k0, plug(t.k1, t.k2)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed ^ 0x5bd1e995u, i);
        // X∩Y = X'∩Y' = ∅
        std::set<std::string> sp[4];
        for (const auto& p : sample::names("c", 8)) switch (sample::uniform(rng, 0, 5)) {
                case 0: sp[0].insert(p); break;
                case 1: sp[1].insert(p); break;
                case 2: sp[2].insert(p); break;
                case 3: sp[3].insert(p); break;
                case 4: sp[0].insert(p), sp[3].insert(p); break;
                default: sp[1].insert(p), sp[2].insert(p);
            }
        auto k = sample::kernel_on<Rational>(rng, sp[0], sp[1], 0.7);
        auto kp = sample::kernel_on<Rational>(rng, sp[2], sp[3], 0.7);
        comm.record(i, plug(k, kp) == plug(kp, k));
    }
    return {assoc, comm};
}

inline std::vector<LawCount> graphing_closure(std::uint64_t seed, std::size_t n) {
    LawCount det{"deterministic-closed"}, prob{"subprobabilistic-closed"}, oracle{"deterministic-oracle"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto p = sample::graphing_pair<Rational>(rng, true);
        auto e = execute_graphing<Rational>(p.f, p.g, p.cut);
        det.record(i, is_deterministic(e));
        oracle.record(i, to_partial_map(e) == execute_deterministic(p.f, p.g, p.cut));
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed + 1, i);
        auto p = sample::graphing_pair<Rational>(rng, false);
        auto e = execute_graphing<Rational>(p.f, p.g, p.cut);
        prob.record(i, is_subprobabilistic(e));
    }
    return {det, prob, oracle};
}

inline std::vector<LawCount> graphing_correspondence(std::uint64_t seed, std::size_t n) {
    LawCount pm{"graphing-partial-map"}, pm_back{"partial-map-graphing"}, km{"graphing-kernel"}, km_back{"kernel-graphing"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto p = sample::graphing_pair<Rational>(rng, true);
        auto f = to_partial_map(p.f);
        pm.record(i, equivalent(from_partial_map<Rational>(p.f.space(), f), p.f));
        pm_back.record(i, to_partial_map(from_partial_map<Rational>(p.f.space(), f)) == f);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed + 1, i);
        auto p = sample::graphing_pair<Rational>(rng, false);
        auto k = to_kernel<Rational>(p.f);
        km.record(i, equivalent(from_kernel<Rational>(p.f.space(), k), p.f));
        km_back.record(i, to_kernel<Rational>(from_kernel<Rational>(p.f.space(), k)) == k);
    }
    return {pm, pm_back, km, km_back};
}

// Möbius function, small arguments
inline int mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

inline std::vector<LawCount> graphing_zeta_measurement(std::uint64_t seed, std::size_t n) {
    LawCount constant{"constant-m-orbits"}, logzeta{"measurement-log-artin-mazur"}, det{"measurement-det"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto pts = sample::names("x", static_cast<std::size_t>(sample::uniform(rng, 1, 8)));
        FiniteSpace space(std::set<std::string>(pts.begin(), pts.end()));
        for (const auto& p : pts) space.set_mass(p, ratio(sample::uniform(rng, 1, 4), sample::uniform(rng, 1, 3)));
        auto f = sample::partial_injection(rng, pts), g = sample::partial_injection(rng, pts);
        auto h = then(f, g);
        const Rational c = ratio(sample::uniform(rng, 1, 5), 6);
        const int big = static_cast<int>(pts.size());

        // m = λx.c: Σ_O μ(O) c/ρ against Σ_m c μ(Per_m)/m, Per_m by Möbius inversion of fix counts
        Rational lhs = graphing_measurement<Rational>(space, f, g, [&](const Rational&) { return c; });
        Rational rhs = 0;
        for (int m = 1; m <= big; ++m) {
            Rational per = 0;
            for (int d = 1; d <= m; ++d)
                if (m % d == 0) per += mobius(m / d) * fix_count(space, h, d);
            rhs += c * per / m;
        }
        constant.record(i, lhs == rhs);

        // default m with z on each step pair: Σ_O μ(O)/ρ · -log(1 - z^ρ) = log ζ_AM(z)
        const int order = 12;
        TruncatedSeries<Rational> l(order);
        for (const auto& o : alternating_orbits(space, f, g))
            for (int k = 1; k * o.length <= order; ++k) l[k * o.length] += o.mass / o.length / k;
        logzeta.record(i, LogZeta<Rational>(l) == artin_mazur_zeta(space, h, order));

        // counting measure: Π_O (1 - c^ρ)^{-1} = 1/det(I - c P_h)
        FiniteSpace counting(space.points());
        Rational prod = 1;
        for (const auto& [base, e] : graphing_measurement_factors(counting, f, g, c)) prod *= base;  // exponents are all -1
        auto dm = det_one_minus_z(partial_map_matrix(counting, h));
        det.record(i, prod == dm(c));
    }
    return {constant, logzeta, det};
}

inline LawCount duality(std::uint64_t seed, std::size_t presentations, std::size_t samples, const Antipode& p = Antipode::at_one()) {
    LawCount c{"duality"};
    std::size_t members = 0, total = 0;
    for (std::size_t i = 0; i < presentations; ++i) {
        auto rng = case_rng(seed, i);
        auto d = sample::duality_case(rng, samples);
        auto r = duality_check(d.a, d.b, d.samples, p);
        for (std::size_t j = 0; j < r.samples; ++j) {
            bool bad = std::find(r.disagreements.begin(), r.disagreements.end(), j) != r.disagreements.end();
            c.record(i * samples + j, !bad);
        }
        members += r.members;
        total += r.samples;
    }
    c.note = std::to_string(members) + "/" + std::to_string(total) + " samples in A -o B";
    return c;
}

inline std::set<State> fresh_states(sample::Rng& rng) {
    std::set<State> s{0};
    if (sample::coin(rng)) s.insert(static_cast<State>(sample::uniform(rng, 1, 3)));
    return s;
}

inline std::vector<LawCount> exponentials(std::uint64_t seed, std::size_t n) {
    LawCount der{"dereliction"}, dig{"digging"}, prom{"promotion"};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed, i);
        auto a = sample::balanced_object(rng);
        // plug(!a, der) against a†, state (r1, (f, f')) ↦ (f, (r1, f'))
        auto r1 = fresh_states(rng), r = fresh_states(rng);
        auto res = po_plug(bang(a, r1), dereliction_object(a.source(), a.target(), a.states(), r));
        std::set<State> passengers;
        for (auto q : r1)
            for (auto f2 : r) passengers.insert(cantor_pair(q, f2));
        der.record(i, iso_equal(res, dagger(a, passengers), [](State s) -> std::optional<State> {
                       auto [q, rest] = cantor_unpair(s);
                       auto [f, f2] = cantor_unpair(rest);
                       return cantor_pair(f, cantor_pair(q, f2));
                   }));
        // plug(!a, dig) against (!!a)†, state (r, e'') ↦ (e'', r)
        auto big1 = fresh_states(rng), big2 = fresh_states(rng), rb = fresh_states(rng);
        auto res2 = po_plug(bang(a, rb), digging_object(a.source(), a.target(), a.states(), big1, big2));
        dig.record(i, iso_equal(res2, dagger(bang(bang(a, big1), big2), rb), [](State s) -> std::optional<State> {
                       auto [q, e2] = cantor_unpair(s);
                       return cantor_pair(e2, q);
                   }));
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = case_rng(seed + 1, i);
        auto w = sample::sites("w", static_cast<std::size_t>(sample::uniform(rng, 1, 2)));
        auto x = sample::sites("x", static_cast<std::size_t>(sample::uniform(rng, 1, 2)));
        auto y = sample::sites("y", static_cast<std::size_t>(sample::uniform(rng, 1, 2)));
        auto a0 = sample::object(rng, w, x, sample::small_states(rng, 2));
        auto f = sample::object(rng, x, y, sample::small_states(rng, 2));
        auto res = promotion_pipeline(f, a0);
        prom.record(i, iso_equal(res, dagger(bang(po_plug(a0, f), {0}), promotion_passengers()),
                                 [](State s) -> std::optional<State> { return cantor_pair(0, s); }) &&
                           res.fn() == po_plug(a0, f).fn());
    }
    return {der, dig, prom};
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"zeta", "graph", "kernel", "graphing", "duality", "exponentials"};
    return names;
}

// `samples` scales every law in the suite; presentations for duality are samples/5 (at least 1) with 100 objects each
inline std::vector<LawCount> run_suite(const std::string& suite, std::uint64_t seed, std::size_t samples) {
    std::vector<LawCount> out;
    auto add = [&](std::vector<LawCount> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (suite == "zeta") {
        out.push_back(zeta_det_identity(seed, samples));
    } else if (suite == "graph") {
        add(graph_cocycle(seed, samples));
        add(trefoil(seed, samples));
    } else if (suite == "kernel") {
        add(exec_kernel_laws(seed, samples));
        add(kernel_cocycle(seed, samples));
        add(kernel_assoc_commute(seed, samples));
    } else if (suite == "graphing") {
        add(graphing_closure(seed, samples));
        add(graphing_correspondence(seed, samples));
        add(graphing_zeta_measurement(seed, samples));
    } else if (suite == "duality") {
        out.push_back(duality(seed, std::max<std::size_t>(1, samples / 5), 100));
    } else if (suite == "exponentials") {
        add(exponentials(seed, samples));
    } else {
        throw PreconditionError("unknown suite " + suite);
    }
    return out;
}

}  // namespace ig::laws
