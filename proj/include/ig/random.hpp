#pragma once

#include "ig/errors.hpp"
#include "ig/graph.hpp"
#include "ig/graphing.hpp"
#include "ig/kernel.hpp"
#include "ig/logic.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace ig::sample {

using Rng = std::mt19937_64;

// per-case generator so batches can be split without changing results
inline Rng case_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline long uniform(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
    return std::bernoulli_distribution(p)(rng);
}

// nonzero p/q with |p/q| <= 1/2, q <= 8
inline Rational small_weight(Rng& rng) {
    long q = uniform(rng, 2, 8);
    long p = 0;
    while (p == 0) p = uniform(rng, -q / 2, q / 2);
    return ratio(p, q);
}

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

template <class S>
WeightedGraph<S> graph_on(Rng& rng, const std::vector<std::string>& verts, std::size_t max_edges, const std::string& edge_prefix) {
    WeightedGraph<S> g;
    for (const auto& v : verts) g.add_vertex(v);
    if (verts.empty()) return g;
    auto ne = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_edges)));
    for (std::size_t i = 0; i < ne; ++i) {
        const auto& s = verts[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(verts.size()) - 1))];
        const auto& t = verts[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(verts.size()) - 1))];
        g.add_edge(edge_prefix + std::to_string(i), s, t, from_rational<S>(small_weight(rng)));
    }
    return g;
}

// ≤ max_v vertices, ≤ max_e edges, |ω| ≤ 1/2
template <class S>
WeightedGraph<S> graph(Rng& rng, std::size_t max_v = 6, std::size_t max_e = 10) {
    auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_v)));
    return graph_on<S>(rng, names("v", n), max_e, "e");
}

template <class S>
struct GraphTriple {
    WeightedGraph<S> f, g, h;
};

// V^F ∩ V^G ∩ V^H = ∅, ≤ 4 vertices each, all pairwise executions convergent
template <class S>
GraphTriple<S> admissible_triple(Rng& rng, std::size_t max_v = 4, std::size_t max_e = 6) {
    static const std::vector<std::vector<int>> owners = {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}};
    for (;;) {
        std::vector<std::string> vs[3];
        auto pool = static_cast<std::size_t>(uniform(rng, 3, 9));
        for (std::size_t i = 0; i < pool; ++i) {
            const auto& o = owners[static_cast<std::size_t>(uniform(rng, 0, 5))];
            for (int k : o) vs[k].push_back("p" + std::to_string(i));
        }
        bool ok = true;
        for (auto& v : vs) ok = ok && !v.empty() && v.size() <= max_v;
        if (!ok) continue;
        GraphTriple<S> t{graph_on<S>(rng, vs[0], max_e, "f"), graph_on<S>(rng, vs[1], max_e, "g"), graph_on<S>(rng, vs[2], max_e, "h")};
        try {
            (void)execute(t.g, t.h);
            (void)execute(t.h, t.f);
            (void)execute(t.f, t.g);
            return t;
        } catch (const DivergenceError&) {
        }
    }
}

// random sub-Markov rows; some rows are exactly stochastic
template <class R>
SubMarkovKernel<std::string, R> kernel_on(Rng& rng, const std::set<std::string>& src, const std::set<std::string>& tgt, double density = 0.5) {
    typename SubMarkovKernel<std::string, R>::Rows rows;
    std::vector<std::string> ts(tgt.begin(), tgt.end());
    for (const auto& x : src) {
        if (ts.empty() || coin(rng, 0.15)) continue;
        std::vector<long> w(ts.size(), 0);
        long total = 0;
        for (auto& v : w)
            if (coin(rng, density)) total += v = uniform(rng, 1, 4);
        if (total == 0) continue;
        Rational mass = coin(rng, 0.3) ? Rational(1) : ratio(uniform(rng, 1, 7), 8);
        for (std::size_t j = 0; j < ts.size(); ++j)
            if (w[j]) rows[x][ts[j]] = from_rational<R>(mass * ratio(w[j], total));
    }
    return {src, tgt, std::move(rows)};
}

// ≤ max_points points split into source and target with a random cut
template <class R>
SubMarkovKernel<std::string, R> kernel(Rng& rng, std::size_t max_points = 10) {
    auto n = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(max_points)));
    std::set<std::string> src, tgt;
    for (const auto& p : names("k", n)) {
        switch (uniform(rng, 0, 2)) {
            case 0: src.insert(p); break;
            case 1: tgt.insert(p); break;
            default: src.insert(p), tgt.insert(p);
        }
    }
    return kernel_on<R>(rng, src, tgt);
}

template <class R>
struct KernelTriple {
    SubMarkovKernel<std::string, R> k0, k1, k2;
};

// general-position triples whose bullets are all well formed; each kernel maps its
// source to a disjoint target (a kernel's own loops break the cocycle, see tests)
template <class R>
KernelTriple<R> general_position_triple(Rng& rng, std::size_t pool = 8) {
    for (;;) {
        std::set<std::string> sp[6];
        for (const auto& p : names("q", pool))
            for (int k = 0; k < 3; ++k) switch (uniform(rng, 0, 2)) {
                    case 0: sp[2 * k].insert(p); break;
                    case 1: sp[2 * k + 1].insert(p); break;
                    default: break;
                }
        KernelTriple<R> t{kernel_on<R>(rng, sp[0], sp[1], 0.9), kernel_on<R>(rng, sp[2], sp[3], 0.9), kernel_on<R>(rng, sp[4], sp[5], 0.9)};
        if (!general_position(t.k0, t.k1, t.k2)) continue;
        try {
            (void)bullet(t.k0, t.k1);
            (void)bullet(t.k1, t.k2);
            (void)bullet(plug(t.k0, t.k1), t.k2);
            (void)bullet(plug(t.k1, t.k2), t.k0);
            (void)bullet(t.k0, plug(t.k1, t.k2));
            return t;
        } catch (const PreconditionError&) {
        }
    }
}

inline MonoidAction random_action(Rng& rng, const std::set<std::string>& pts, std::size_t gens) {
    MonoidAction act(pts);
    std::vector<std::string> ps(pts.begin(), pts.end());
    for (std::size_t g = 0; g < gens; ++g) {
        std::map<std::string, std::string> f;
        for (const auto& p : ps) f[p] = ps[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ps.size()) - 1))];
        act.add_generator("s" + std::to_string(g), std::move(f));
    }
    return act;
}

inline std::vector<std::string> random_word(Rng& rng, const MonoidAction& act) {
    std::vector<std::string> gens;
    for (const auto& [g, f] : act.generators()) gens.push_back(g);
    std::vector<std::string> w;
    auto len = uniform(rng, 0, 2);
    for (long i = 0; i < len; ++i) w.push_back(gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(gens.size()) - 1))]);
    return w;
}

template <class S>
struct GraphingPair {
    GraphingRep<S> f, g;
    std::set<std::string> cut;
};

// domains: F owns its exterior sources, G its own, both may act on the cut
template <class S>
GraphingPair<S> graphing_pair(Rng& rng, bool deterministic, std::size_t max_points = 8) {
    for (;;) {
        auto n = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(max_points)));
        auto ps = names("x", n);
        FiniteSpace space(std::set<std::string>(ps.begin(), ps.end()));
        std::set<std::string> cut, dom_f, dom_g;
        for (const auto& p : ps) {
            if (coin(rng, 0.4)) {
                cut.insert(p);
                if (coin(rng, 0.8)) dom_f.insert(p);
                if (coin(rng, 0.8)) dom_g.insert(p);
            } else if (coin(rng, 0.45)) {
                dom_f.insert(p);
            } else if (coin(rng)) {
                dom_g.insert(p);
            }
        }
        auto build = [&](const std::set<std::string>& dom, const std::string& prefix) {
            auto act = random_action(rng, space.points(), 3);
            GraphingRep<S> g(space, act);
            std::size_t k = 0;
            if (deterministic) {
                // a partition of the domain, each block on its own word
                std::map<long, std::set<std::string>> blocks;
                for (const auto& p : dom) blocks[uniform(rng, 0, 2)].insert(p);
                for (auto& [b, src] : blocks) g.add_edge(prefix + std::to_string(k++), src, random_word(rng, act), scalar_traits<S>::one());
            } else {
                auto ne = uniform(rng, 0, 5);
                for (long i = 0; i < ne; ++i) {
                    std::set<std::string> src;
                    for (const auto& p : dom)
                        if (coin(rng)) src.insert(p);
                    g.add_edge(prefix + std::to_string(k++), src, random_word(rng, act),
                               from_rational<S>(ratio(uniform(rng, 1, 4), uniform(rng, 4, 8))));
                }
            }
            return g;
        };
        GraphingPair<S> out{build(dom_f, "f"), build(dom_g, "g"), cut};
        if (!deterministic && (!is_subprobabilistic(out.f) || !is_subprobabilistic(out.g))) continue;
        return out;
    }
}

inline PartialMap partial_injection(Rng& rng, const std::vector<std::string>& pts) {
    std::vector<std::string> img = pts;
    std::shuffle(img.begin(), img.end(), rng);
    PartialMap f;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (coin(rng, 0.75)) f.map[pts[i]] = img[i];
    return f;
}

inline std::set<State> small_states(Rng& rng, std::size_t max_states = 3) {
    std::set<State> s;
    auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_states)));
    while (s.size() < n) s.insert(static_cast<State>(uniform(rng, 0, 4)));
    return s;
}

inline std::set<Site> sites(const std::string& prefix, std::size_t n) {
    std::set<Site> out;
    for (const auto& p : names(prefix, n)) out.insert(Site{p, {}});
    return out;
}

// random balanced object src → tgt
inline ProofObject object(Rng& rng, const std::set<Site>& src, const std::set<Site>& tgt, const std::set<State>& states,
                          double density = 0.4, PoweredRational fn = {}) {
    std::vector<LPoint> outs;
    for (const auto& t : tgt)
        for (auto s : states) outs.push_back({t, s});
    std::vector<ProofObject::Entry> entries;
    for (const auto& x : src)
        for (auto e : states) {
            if (outs.empty() || coin(rng, 0.2)) continue;
            std::vector<long> w(outs.size(), 0);
            long total = 0;
            for (auto& v : w)
                if (coin(rng, density)) total += v = uniform(rng, 1, 3);
            if (total == 0) continue;
            Rational mass = coin(rng, 0.4) ? Rational(1) : ratio(uniform(rng, 1, 3), 4);
            for (std::size_t j = 0; j < outs.size(); ++j)
                if (w[j]) entries.emplace_back(x, e, outs[j].site, outs[j].state, mass * ratio(w[j], total));
        }
    return ProofObject(src, tgt, states, entries, std::move(fn));
}

// balanced object on ≤ 4 points with ≤ 3 states
inline ProofObject balanced_object(Rng& rng) {
    auto nx = static_cast<std::size_t>(uniform(rng, 1, 2));
    auto ny = static_cast<std::size_t>(uniform(rng, 1, 4 - static_cast<long>(nx)));
    return object(rng, sites("a", nx), sites("b", ny), small_states(rng));
}

struct DualityCase {
    TypeGen a, b;  // a generated, b orthogonal
    std::vector<ProofObject> samples;
};

inline PoweredRational random_constant(Rng& rng) {
    static const std::vector<Rational> cs = {Rational(1), Rational(2), Rational(1, 2), Rational(3, 2)};
    const auto& c = cs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(cs.size()) - 1))];
    return c == 1 ? PoweredRational{} : PoweredRational::constant(c);
}

inline DualityCase duality_case(Rng& rng, std::size_t samples) {
    DualityCase c;
    auto ain = sites("ai", static_cast<std::size_t>(uniform(rng, 1, 2)));
    auto aout = sites("ao", static_cast<std::size_t>(uniform(rng, 1, 2)));
    auto bin = sites("bi", static_cast<std::size_t>(uniform(rng, 1, 2)));
    auto bout = sites("bo", static_cast<std::size_t>(uniform(rng, 1, 2)));
    c.a = {ain, aout, {}, TypeGen::Marker::Generated};
    c.b = {bin, bout, {}, TypeGen::Marker::Orthogonal};
    for (long i = uniform(rng, 1, 2); i > 0; --i) c.a.generators.push_back(object(rng, ain, aout, small_states(rng, 2), 0.6, random_constant(rng)));
    for (long i = uniform(rng, 1, 2); i > 0; --i) c.b.generators.push_back(object(rng, bout, bin, small_states(rng, 2), 0.6, random_constant(rng)));
    for (std::size_t i = 0; i < samples; ++i)
        c.samples.push_back(object(rng, pset_union(aout, bin), pset_union(ain, bout), small_states(rng, 2), 0.5, random_constant(rng)));
    return c;
}

}  // namespace ig::sample
