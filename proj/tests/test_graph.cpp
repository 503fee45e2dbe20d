#include "ig/graph.hpp"
#include "ig/random.hpp"
#include "ig/zeta.hpp"

#include <gtest/gtest.h>

#include <tuple>

using namespace ig;

namespace {

using G = GaussRational;
using Graph = WeightedGraph<G>;

struct E {
    std::string id, s, t;
    G w;
};

Graph mk(std::vector<std::string> vs, std::vector<E> es) {
    Graph g;
    for (auto& v : vs) g.add_vertex(v);
    for (auto& e : es) g.add_edge(e.id, e.s, e.t, e.w);
    return g;
}

G q(long p, long r = 1) { return G(ratio(p, r)); }

G weight(const Graph& g, const std::string& s, const std::string& t) {
    G acc;
    for (const auto& e : g.edges())
        if (e.source == s && e.target == t) acc = acc + e.weight;
    return acc;
}

// literal execution: one edge per alternating path, only defined when the family is finite
std::optional<Graph> literal_execute(const Graph& f, const Graph& g) {
    auto ext = set_union(set_difference(f.vertices(), g.vertices()), set_difference(g.vertices(), f.vertices()));
    auto cut = set_intersection(f.vertices(), g.vertices());
    const std::size_t len = 2 * cut.size() + 2;
    auto paths = enumerate_alternating_paths(f, g, ext, len);
    if (paths.size() != enumerate_alternating_paths(f, g, ext, len + 2).size()) return std::nullopt;
    Graph out;
    for (const auto& v : ext) out.add_vertex(v);
    std::size_t i = 0;
    for (const auto& p : paths) out.add_edge("p" + std::to_string(i++), p.source, p.target, p.weight);
    return out;
}

// prime-cycle weights, or nullopt if cycles keep appearing past the bound
std::optional<std::vector<std::string>> finite_cycle_weights(const Graph& f, const Graph& g, std::size_t bound) {
    auto a = prime_closed_paths(f, g, bound);
    if (a.size() != prime_closed_paths(f, g, 2 * bound).size()) return std::nullopt;
    std::vector<std::string> w;
    for (const auto& c : a) w.push_back(to_str(c.weight));
    return w;
}

}  // namespace

TEST(GraphUnion, SharedVertexIdentified) {
    auto u = graph_union(mk({"a", "b"}, {{"e1", "a", "b", 1}}), mk({"b", "c"}, {{"e2", "b", "c", 1}}));
    EXPECT_EQ(u.vertices(), (std::set<std::string>{"a", "b", "c"}));
    EXPECT_EQ(u.edges().size(), 2u);
}

TEST(GraphUnion, EmptyRightIsNeutral) {
    auto f = mk({"a", "b"}, {{"e1", "a", "b", q(1, 3)}});
    EXPECT_TRUE(same_weighted_graph(graph_union(f, Graph{}), f));
}

TEST(GraphUnion, EdgeIdClash) {
    auto f = mk({"a", "b"}, {{"e1", "a", "b", 1}});
    EXPECT_THROW(graph_union(f, f), PreconditionError);
}

TEST(AlternatingPaths, SinglePath) {
    auto ps = enumerate_alternating_paths(mk({"a", "b"}, {{"f", "a", "b", q(1, 2)}}), mk({"b", "c"}, {{"g", "b", "c", q(1, 3)}}),
                                          {"a", "c"}, 5);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].source, "a");
    EXPECT_EQ(ps[0].target, "c");
    EXPECT_EQ(ps[0].weight, q(1, 6));
    EXPECT_EQ(ps[0].edges.size(), 2u);
}

TEST(AlternatingPaths, NoEndpoints) {
    EXPECT_TRUE(enumerate_alternating_paths(mk({"a"}, {{"f", "a", "a", 1}}), mk({"a"}, {{"g", "a", "a", 1}}), {}, 4).empty());
}

TEST(AlternatingPaths, TwoCycleUpToFour) {
    G p = q(1, 2), r = q(1, 3);
    auto ps = enumerate_alternating_paths(mk({"a", "b"}, {{"f", "a", "b", p}}), mk({"a", "b"}, {{"g", "b", "a", r}}), {"a", "b"}, 4);
    // length counts edges, so the bound also admits abab·a and baba·b
    ASSERT_EQ(ps.size(), 8u);
    std::vector<std::tuple<std::size_t, std::string, std::string, G>> got;
    for (const auto& x : ps) got.emplace_back(x.edges.size(), x.source, x.target, x.weight);
    std::vector<std::tuple<std::size_t, std::string, std::string, G>> want = {
        {1, "a", "b", p}, {1, "b", "a", r}, {2, "a", "a", p * r}, {2, "b", "b", r * p},
        {3, "a", "b", p * r * p}, {3, "b", "a", r * p * r}, {4, "a", "a", p * r * p * r}, {4, "b", "b", r * p * r * p}};
    for (const auto& w : want) EXPECT_NE(std::find(got.begin(), got.end(), w), got.end());
    EXPECT_THROW(enumerate_alternating_paths(Graph{}, Graph{}, {"a"}, 0), PreconditionError);
}

TEST(AlternatingPaths, OrderedByLengthThenIds) {
    auto ps = enumerate_alternating_paths(mk({"a", "b"}, {{"f", "a", "b", 1}, {"f2", "b", "b", 1}}), mk({"a", "b"}, {{"g", "b", "a", 1}}),
                                          {"a", "b"}, 3);
    for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LE(ps[i - 1].edges.size(), ps[i].edges.size());
}

TEST(Execute, SinglePath) {
    auto x = execute(mk({"a", "b"}, {{"f", "a", "b", 1}}), mk({"b", "c"}, {{"g", "b", "c", 1}}));
    EXPECT_EQ(x.vertices(), (std::set<std::string>{"a", "c"}));
    ASSERT_EQ(x.edges().size(), 1u);
    EXPECT_EQ(weight(x, "a", "c"), G(1));
}

TEST(Execute, DisjointIsUnion) {
    auto f = mk({"a", "b"}, {{"f", "a", "b", q(1, 2)}});
    auto g = mk({"c"}, {{"g", "c", "c", q(1, 3)}});
    EXPECT_TRUE(same_weighted_graph(execute(f, g), simple_collapse(graph_union(f, g))));
}

TEST(Execute, ThroughTwoCutVertices) {
    auto f = mk({"a", "b", "x", "x'"}, {{"f1", "a", "x", 1}, {"f2", "x'", "b", 1}});
    auto g = mk({"x", "x'"}, {{"g", "x", "x'", q(1, 2)}});
    auto r = execute(f, g);
    EXPECT_EQ(weight(r, "a", "b"), q(1, 2));
    EXPECT_EQ(r.vertices(), (std::set<std::string>{"a", "b"}));
}

TEST(Execute, CutCycleGeometricSum) {
    // a -> c, then c <-> c alternately with weight 1/2 each way round
    auto f = mk({"a", "c", "b"}, {{"f1", "a", "c", 1}, {"f2", "c", "c", q(1, 2)}});
    auto g = mk({"c", "d"}, {{"g1", "c", "c", q(1, 2)}, {"g2", "c", "d", 1}});
    // paths a c (g2) | a c (g1 f2)^k g2 → 1/(1-1/4)
    EXPECT_EQ(weight(execute(f, g), "a", "d"), q(4, 3));
}

TEST(Execute, DivergentCut) {
    auto f = mk({"a", "c"}, {{"f1", "a", "c", 1}, {"f2", "c", "c", 1}});
    auto g = mk({"c", "d"}, {{"g1", "c", "c", 1}, {"g2", "c", "d", 1}});
    EXPECT_THROW(execute(f, g), DivergenceError);
}

TEST(PrimeClosedPaths, TwoCycle) {
    auto cs = prime_closed_paths(mk({"a", "b"}, {{"f", "a", "b", q(1, 2)}}), mk({"a", "b"}, {{"g", "b", "a", q(1, 3)}}), 8);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].weight, q(1, 6));
    EXPECT_EQ(cs[0].edges.size(), 2u);
}

TEST(PrimeClosedPaths, NoSharedVertices) {
    EXPECT_TRUE(prime_closed_paths(mk({"a"}, {{"f", "a", "a", 1}}), mk({"b"}, {{"g", "b", "b", 1}}), 6).empty());
}

TEST(PrimeClosedPaths, PowersExcluded) {
    auto cs = prime_closed_paths(mk({"v"}, {{"f", "v", "v", q(1, 2)}}), mk({"v"}, {{"g", "v", "v", q(1, 3)}}), 8);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].weight, q(1, 6));
    EXPECT_THROW(prime_closed_paths(Graph{}, Graph{}, 3), PreconditionError);
}

TEST(Measurement, HalfCycleIsLog2) {
    auto m = measurement(mk({"a", "b"}, {{"f", "a", "b", q(1, 2)}}), mk({"a", "b"}, {{"g", "b", "a", 1}}));
    EXPECT_FALSE(m.infinite);
    EXPECT_NEAR(m.value.real(), std::log(2.0), 1e-12);
    EXPECT_NEAR(m.value.imag(), 0.0, 1e-12);
    EXPECT_EQ(m.zeta_inverse, q(1, 2));
}

TEST(Measurement, NoCyclesIsZero) {
    auto m = measurement(mk({"a", "b"}, {{"f", "a", "b", q(1, 2)}}), mk({"b", "c"}, {{"g", "b", "c", 1}}));
    EXPECT_FALSE(m.infinite);
    EXPECT_EQ(m.value, Complex(0, 0));
}

TEST(Measurement, UnitCycleIsInfinite) {
    auto f = mk({"a", "b"}, {{"f", "a", "b", 1}});
    auto g = mk({"a", "b"}, {{"g", "b", "a", 1}});
    EXPECT_TRUE(measurement(f, g).infinite);
    EXPECT_TRUE(measurement<G>(f, g, default_m<G>, 8).infinite);
}

TEST(SimpleCollapse, ParallelEdgesSum) {
    auto c = simple_collapse(mk({"a", "b"}, {{"e1", "a", "b", q(1, 3)}, {"e2", "a", "b", q(1, 4)}}));
    ASSERT_EQ(c.edges().size(), 1u);
    EXPECT_EQ(c.edges()[0].weight, q(7, 12));
}

TEST(SimpleCollapse, SimpleUnchangedEmptyEmpty) {
    auto g = mk({"a", "b"}, {{"e1", "a", "b", q(1, 3)}, {"e2", "b", "a", q(1, 4)}});
    EXPECT_TRUE(same_weighted_graph(simple_collapse(g), g));
    EXPECT_TRUE(simple_collapse(Graph{}).empty());
}

TEST(TransitionMatrix, Examples) {
    auto loop = transition_matrix(mk({"v"}, {{"e", "v", "v", q(2, 5)}}));
    ASSERT_EQ(loop.m.rows(), 1u);
    EXPECT_EQ(loop.m(0, 0), q(2, 5));
    auto empty = transition_matrix(mk({"a", "b"}, {}));
    ASSERT_EQ(empty.m.rows(), 2u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(is_zero(empty.m(i, j)));
    auto two = transition_matrix(mk({"a", "b"}, {{"p", "a", "b", q(1, 2)}, {"q", "b", "a", q(1, 3)}}));
    EXPECT_EQ(two.m(0, 1), q(1, 2));
    EXPECT_EQ(two.m(1, 0), q(1, 3));
    EXPECT_TRUE(is_zero(two.m(0, 0)) && is_zero(two.m(1, 1)));
}

TEST(Bullet, SameSupportMatrixProduct) {
    auto b = bullet(mk({"a", "b"}, {{"f", "a", "b", q(1, 2)}}), mk({"a", "b"}, {{"g", "b", "a", q(1, 3)}}));
    EXPECT_EQ(weight(b, "a", "a"), q(1, 6));
    EXPECT_EQ(b.edges().size(), 1u);
}

// identity paddings cancel: M_F vanishes off V^F and M_G off V^G
TEST(Bullet, EmptyLeftGivesZero) {
    auto g = mk({"a", "b"}, {{"g", "a", "b", q(1, 2)}});
    auto b = bullet(mk({"a", "b"}, {}), g);
    EXPECT_TRUE(b.edges().empty());
    EXPECT_EQ(b.vertices(), g.vertices());
}

TEST(Bullet, DisjointSupportsGiveZero) {
    auto b = bullet(mk({"a"}, {{"f", "a", "a", q(1, 2)}}), mk({"b"}, {{"g", "b", "b", q(1, 3)}}));
    EXPECT_TRUE(b.edges().empty());
    EXPECT_EQ(b.vertices(), (std::set<std::string>{"a", "b"}));
}

TEST(GraphProperty, ExecutionAssociative) {
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = sample::case_rng(21, i);
        auto t = sample::admissible_triple<G>(rng);
        try {
            auto l = execute(t.f, execute(t.g, t.h));
            auto r = execute(execute(t.f, t.g), t.h);
            EXPECT_TRUE(same_weighted_graph(l, r)) << "case " << i;
        } catch (const DivergenceError&) {
        }
    }
}

TEST(GraphProperty, TrefoilNumeric) {
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = sample::case_rng(22, i);
        auto t = sample::admissible_triple<G>(rng);
        auto l = measurement(t.f, execute(t.g, t.h)) + measurement(t.g, t.h);
        auto r = measurement(t.g, execute(t.h, t.f)) + measurement(t.h, t.f);
        EXPECT_TRUE(measurement_equal(l, r, 1e-9)) << "case " << i;
        EXPECT_EQ(l.zeta_inverse, r.zeta_inverse) << "case " << i;
    }
}

TEST(GraphProperty, GeometricTrefoilOnFiniteInstances) {
    std::size_t checked = 0, nontrivial = 0;
    for (std::size_t i = 0; i < 400; ++i) {
        auto rng = sample::case_rng(23, i);
        auto t = sample::admissible_triple<G>(rng, 4, 4);
        auto gh = literal_execute(t.g, t.h), hf = literal_execute(t.h, t.f);
        if (!gh || !hf) continue;
        auto a = finite_cycle_weights(t.f, *gh, 6), b = finite_cycle_weights(t.g, t.h, 6);
        auto c = finite_cycle_weights(t.g, *hf, 6), d = finite_cycle_weights(t.h, t.f, 6);
        if (!a || !b || !c || !d) continue;
        a->insert(a->end(), b->begin(), b->end());
        c->insert(c->end(), d->begin(), d->end());
        std::sort(a->begin(), a->end());
        std::sort(c->begin(), c->end());
        EXPECT_EQ(*a, *c) << "case " << i;
        ++checked;
        nontrivial += !a->empty();
    }
    EXPECT_GT(checked, 50u);
    EXPECT_GT(nontrivial, 10u);
}

TEST(GraphProperty, MeasurementIsLogZetaOfBullet) {
    for (std::size_t i = 0; i < 300; ++i) {
        auto rng = sample::case_rng(24, i);
        auto f = sample::graph<G>(rng, 4, 6);
        auto g = sample::graph_on<G>(rng, sample::names("v", static_cast<std::size_t>(sample::uniform(rng, 1, 4))), 6, "g");
        auto m = measurement(f, g);
        if (m.infinite) continue;
        auto z = eval_at(zeta_det(bullet(f, g)), G(1));
        EXPECT_EQ(m.zeta_inverse * z, G(1)) << "case " << i;
        Complex logz = std::log(z.to_complex());
        EXPECT_NEAR(m.value.real(), logz.real(), 1e-9) << "case " << i;
    }
}

TEST(GraphProperty, MeasurementInvariantUnderCollapse) {
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = sample::case_rng(25, i);
        auto f = sample::graph<G>(rng, 3, 8);
        auto g = sample::graph_on<G>(rng, sample::names("v", 3), 8, "g");
        auto a = measurement(f, g), b = measurement(simple_collapse(f), simple_collapse(g));
        EXPECT_TRUE(measurement_equal(a, b)) << "case " << i;
        EXPECT_EQ(a.zeta_inverse, b.zeta_inverse);
    }
}

TEST(GraphProperty, ClosedFormMatchesPathSums) {
    const std::size_t L = 14;
    std::size_t bounded = 0;
    for (std::size_t i = 0; i < 150; ++i) {
        auto rng = sample::case_rng(26, i);
        auto f = sample::graph_on<G>(rng, {"a", "c0", "c1"}, 5, "f");
        auto g = sample::graph_on<G>(rng, {"c0", "c1", "d"}, 5, "g");
        Graph x;
        try {
            x = execute(f, g);
        } catch (const DivergenceError&) {
            continue;
        }
        auto alt = detail::alternation(f, g);
        // exact: paths of length <= L are direct + in C^k out for k <= L-2
        auto paths = enumerate_alternating_paths(f, g, {"a", "d"}, L);
        Matrix<G> acc = alt.direct, ck = Matrix<G>::identity(alt.step.rows());
        for (std::size_t k = 0; k + 2 <= L; ++k) {
            acc = acc + alt.in * ck * alt.out;
            ck = ck * alt.step;
        }
        auto norm = [](const Matrix<G>& m) {
            double best = 0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                double s = 0;
                for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(r, c).to_complex());
                best = std::max(best, s);
            }
            return best;
        };
        const double nc = norm(alt.step);
        for (std::size_t u = 0; u < alt.exterior.size(); ++u)
            for (std::size_t v = 0; v < alt.exterior.size(); ++v) {
                G sum;
                for (const auto& p : paths)
                    if (p.source == alt.exterior[u] && p.target == alt.exterior[v]) sum = sum + p.weight;
                EXPECT_EQ(sum, acc(u, v)) << "case " << i;
                if (nc < 1) {
                    double tail = norm(alt.in) * norm(alt.out) * std::pow(nc, double(L - 1)) / (1 - nc);
                    EXPECT_LE(std::abs((weight(x, alt.exterior[u], alt.exterior[v]) - sum).to_complex()), tail + 1e-15) << "case " << i;
                }
            }
        bounded += nc < 1;
    }
    EXPECT_GT(bounded, 50u);
}
