#pragma once

#include "ig/errors.hpp"
#include "ig/linalg.hpp"
#include "ig/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ig {

template <class S>
struct Edge {
    std::string id;
    std::string source;
    std::string target;
    S weight;
};

template <class S>
class WeightedGraph {
public:
    WeightedGraph() = default;

    WeightedGraph& add_vertex(const std::string& v) {
        vertices_.insert(v);
        return *this;
    }
    WeightedGraph& add_edge(std::string id, std::string s, std::string t, S w) {
        if (!vertices_.count(s)) throw PreconditionError("edge " + id + ": unknown vertex " + s);
        if (!vertices_.count(t)) throw PreconditionError("edge " + id + ": unknown vertex " + t);
        if (!ids_.insert(id).second) throw PreconditionError("duplicate edge id " + id);
        edges_.push_back({std::move(id), std::move(s), std::move(t), std::move(w)});
        return *this;
    }

    const std::set<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge<S>>& edges() const { return edges_; }
    bool has_vertex(const std::string& v) const { return vertices_.count(v) > 0; }
    bool empty() const { return vertices_.empty(); }

    template <class U, class F>
    WeightedGraph<U> map_weights(F&& f) const {
        WeightedGraph<U> g;
        for (const auto& v : vertices_) g.add_vertex(v);
        for (const auto& e : edges_) g.add_edge(e.id, e.source, e.target, f(e.weight));
        return g;
    }

private:
    std::set<std::string> vertices_;
    std::set<std::string> ids_;
    std::vector<Edge<S>> edges_;
};

template <class S>
struct LabeledMatrix {
    std::vector<std::string> labels;
    Matrix<S> m;

    std::optional<std::size_t> index(const std::string& v) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), v);
        if (it == labels.end() || *it != v) return std::nullopt;
        return static_cast<std::size_t>(it - labels.begin());
    }
};

inline std::set<std::string> set_intersection(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline std::set<std::string> set_difference(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline std::set<std::string> set_union(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

template <class S>
WeightedGraph<S> graph_union(const WeightedGraph<S>& f, const WeightedGraph<S>& g) {
    WeightedGraph<S> out;
    for (const auto& v : f.vertices()) out.add_vertex(v);
    for (const auto& v : g.vertices()) out.add_vertex(v);
    for (const auto& e : f.edges()) out.add_edge(e.id, e.source, e.target, e.weight);
    for (const auto& e : g.edges()) out.add_edge(e.id, e.source, e.target, e.weight);
    return out;
}

template <class S>
LabeledMatrix<S> transition_matrix(const WeightedGraph<S>& g) {
    LabeledMatrix<S> lm{{g.vertices().begin(), g.vertices().end()}, Matrix<S>(g.vertices().size(), g.vertices().size())};
    for (const auto& e : g.edges()) {
        auto i = *lm.index(e.source), j = *lm.index(e.target);
        lm.m(i, j) = lm.m(i, j) + e.weight;
    }
    return lm;
}

inline std::string simple_edge_id(const std::string& s, const std::string& t) {
    return s + "->" + t;
}

template <class S>
WeightedGraph<S> from_labeled_matrix(const LabeledMatrix<S>& lm) {
    WeightedGraph<S> g;
    for (const auto& v : lm.labels) g.add_vertex(v);
    for (std::size_t i = 0; i < lm.labels.size(); ++i)
        for (std::size_t j = 0; j < lm.labels.size(); ++j)
            if (!is_zero(lm.m(i, j))) g.add_edge(simple_edge_id(lm.labels[i], lm.labels[j]), lm.labels[i], lm.labels[j], lm.m(i, j));
    return g;
}

template <class S>
WeightedGraph<S> simple_collapse(const WeightedGraph<S>& g) {
    return from_labeled_matrix(transition_matrix(g));
}

// structural equality of simple graphs: same vertices, same summed weights
template <class S>
bool same_weighted_graph(const WeightedGraph<S>& a, const WeightedGraph<S>& b) {
    if (a.vertices() != b.vertices()) return false;
    return transition_matrix(a).m == transition_matrix(b).m;
}

enum class Side { F, G };

template <class S>
struct AlternatingPath {
    std::vector<std::pair<std::string, Side>> edges;
    std::string source;
    std::string target;
    S weight;
};

namespace detail {

template <class S>
struct Arc {
    std::size_t from, to;
    std::size_t label;  // ordering key
    Side side;
    S weight;
};

// both edge lists, sorted by edge id, with vertex indices into `verts`
template <class S>
std::vector<Arc<S>> alternating_arcs(const WeightedGraph<S>& f, const WeightedGraph<S>& g, const std::vector<std::string>& verts,
                                     std::vector<std::string>* ids = nullptr) {
    std::vector<std::tuple<std::string, Side, const Edge<S>*>> all;
    for (const auto& e : f.edges()) all.emplace_back(e.id, Side::F, &e);
    for (const auto& e : g.edges()) all.emplace_back(e.id, Side::G, &e);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    auto idx = [&](const std::string& v) { return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
    std::vector<Arc<S>> arcs;
    for (std::size_t k = 0; k < all.size(); ++k) {
        const auto* e = std::get<2>(all[k]);
        arcs.push_back({idx(e->source), idx(e->target), k, std::get<1>(all[k]), e->weight});
        if (ids) ids->push_back(std::get<0>(all[k]));
    }
    return arcs;
}

inline bool is_lyndon(const std::vector<std::size_t>& w) {
    const std::size_t n = w.size();
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = w[i], b = w[(i + r) % n];
            if (a < b) break;
            if (a > b) return false;
            if (i + 1 == n) return false;  // periodic
        }
    }
    return true;
}

// enumerate closed arc sequences whose label word is Lyndon (one per prime cycle up to rotation)
template <class S, class Follow, class Visit>
void prime_cycles(const std::vector<Arc<S>>& arcs, std::size_t n_vertices, std::size_t max_len, Follow follow, Visit visit) {
    std::vector<std::vector<std::size_t>> out(n_vertices);
    for (std::size_t k = 0; k < arcs.size(); ++k) out[arcs[k].from].push_back(k);
    std::vector<std::size_t> path, labels;
    std::vector<S> prefix;
    std::function<void()> dfs = [&]() {
        const auto& last = arcs[path.back()];
        const auto& first = arcs[path.front()];
        if (last.to == first.from && follow(last, first) && is_lyndon(labels)) visit(path, prefix.back());
        if (path.size() == max_len) return;
        for (std::size_t k : out[last.to]) {
            const auto& a = arcs[k];
            if (a.label < first.label || !follow(last, a)) continue;
            path.push_back(k);
            labels.push_back(a.label);
            prefix.push_back(prefix.back() * a.weight);
            dfs();
            path.pop_back();
            labels.pop_back();
            prefix.pop_back();
        }
    };
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        path = {k};
        labels = {arcs[k].label};
        prefix = {arcs[k].weight};
        dfs();
    }
}

}  // namespace detail

template <class S>
std::vector<AlternatingPath<S>> enumerate_alternating_paths(const WeightedGraph<S>& f, const WeightedGraph<S>& g,
                                                            const std::set<std::string>& endpoints, std::size_t max_len) {
    if (max_len < 1) throw PreconditionError("max_len must be at least 1");
    std::vector<AlternatingPath<S>> out;
    if (endpoints.empty()) return out;
    auto all = set_union(f.vertices(), g.vertices());
    std::vector<std::string> verts(all.begin(), all.end());
    std::vector<std::string> ids;
    auto arcs = detail::alternating_arcs(f, g, verts, &ids);
    std::vector<std::vector<std::size_t>> from(verts.size());
    for (std::size_t k = 0; k < arcs.size(); ++k) from[arcs[k].from].push_back(k);

    std::vector<std::size_t> path;
    std::vector<S> prefix;
    std::function<void()> dfs = [&]() {
        const auto& last = arcs[path.back()];
        if (endpoints.count(verts[last.to])) {
            AlternatingPath<S> p;
            for (auto k : path) p.edges.emplace_back(ids[k], arcs[k].side);
            p.source = verts[arcs[path.front()].from];
            p.target = verts[last.to];
            p.weight = prefix.back();
            out.push_back(std::move(p));
        }
        if (path.size() == max_len) return;
        for (auto k : from[last.to]) {
            if (arcs[k].side == last.side) continue;
            path.push_back(k);
            prefix.push_back(prefix.back() * arcs[k].weight);
            dfs();
            path.pop_back();
            prefix.pop_back();
        }
    };
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        if (!endpoints.count(verts[arcs[k].from])) continue;
        path = {k};
        prefix = {arcs[k].weight};
        dfs();
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.edges < b.edges;
    });
    return out;
}

namespace detail {

// blocks of the alternation system between F and G through their cut
template <class S>
struct Alternation {
    std::vector<std::string> exterior;  // (V^F \ V^G) u (V^G \ V^F), sorted
    std::vector<std::string> cut;
    Matrix<S> direct;  // exterior -> exterior in one edge
    Matrix<S> in;      // exterior -> states
    Matrix<S> step;    // states -> states; state i < |cut| means "arrived by F, G next"
    Matrix<S> out;     // states -> exterior
};

template <class S>
Alternation<S> alternation(const WeightedGraph<S>& f, const WeightedGraph<S>& g) {
    Alternation<S> a;
    auto cut = set_intersection(f.vertices(), g.vertices());
    auto ext = set_union(set_difference(f.vertices(), g.vertices()), set_difference(g.vertices(), f.vertices()));
    a.cut.assign(cut.begin(), cut.end());
    a.exterior.assign(ext.begin(), ext.end());
    const std::size_t nc = a.cut.size(), ne = a.exterior.size();
    a.direct = Matrix<S>(ne, ne);
    a.in = Matrix<S>(ne, 2 * nc);
    a.step = Matrix<S>(2 * nc, 2 * nc);
    a.out = Matrix<S>(2 * nc, ne);
    auto find = [](const std::vector<std::string>& v, const std::string& x) -> std::optional<std::size_t> {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x) return std::nullopt;
        return static_cast<std::size_t>(it - v.begin());
    };
    auto add = [](Matrix<S>& m, std::size_t i, std::size_t j, const S& w) { m(i, j) = m(i, j) + w; };
    // F edges: after them a G edge follows (state offset 0); G edges lead to offset nc
    auto place = [&](const WeightedGraph<S>& h, std::size_t arrive_offset, std::size_t leave_offset) {
        for (const auto& e : h.edges()) {
            auto se = find(a.exterior, e.source), te = find(a.exterior, e.target);
            auto sc = find(a.cut, e.source), tc = find(a.cut, e.target);
            if (se && te) add(a.direct, *se, *te, e.weight);
            else if (se && tc) add(a.in, *se, arrive_offset + *tc, e.weight);
            else if (sc && tc) add(a.step, leave_offset + *sc, arrive_offset + *tc, e.weight);
            else if (sc && te) add(a.out, leave_offset + *sc, *te, e.weight);
        }
    };
    place(f, 0, nc);
    place(g, nc, 0);
    return a;
}

// states reachable from `in` and co-reachable to `out`
template <class S>
std::vector<std::size_t> relevant_states(const Alternation<S>& a) {
    const std::size_t n = a.step.rows();
    std::vector<char> fwd(n, 0), bwd(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < a.in.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(a.in(i, j)) && !fwd[j]) fwd[j] = 1, stack.push_back(j);
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(a.step(s, j)) && !fwd[j]) fwd[j] = 1, stack.push_back(j);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.out.cols(); ++j)
            if (!is_zero(a.out(i, j)) && !bwd[i]) bwd[i] = 1, stack.push_back(i);
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(a.step(j, s)) && !bwd[j]) bwd[j] = 1, stack.push_back(j);
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (fwd[i] && bwd[i]) keep.push_back(i);
    return keep;
}

template <class S>
Matrix<S> submatrix(const Matrix<S>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix<S> out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

inline std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace detail

// execution F::G, returned in simple-collapsed closed form
template <class S>
WeightedGraph<S> execute(const WeightedGraph<S>& f, const WeightedGraph<S>& g) {
    auto a = detail::alternation(f, g);
    const std::size_t ne = a.exterior.size();
    auto keep = detail::relevant_states(a);
    LabeledMatrix<S> res{a.exterior, a.direct};
    if (!keep.empty()) {
        auto step = detail::submatrix(a.step, keep, keep);
        if (spectral_radius(step) >= 1.0 - 1e-12)
            throw DivergenceError("execution diverges: alternating cycles in the cut have spectral radius >= 1");
        auto in = detail::submatrix(a.in, detail::iota(ne), keep);
        auto out = detail::submatrix(a.out, keep, detail::iota(ne));
        auto z = solve(Matrix<S>::identity(keep.size()) - step, out);
        if (!z) throw DivergenceError("execution diverges: I - C is singular");
        res.m = res.m + in * *z;
    }
    return from_labeled_matrix(res);
}

template <class S>
struct PrimeCycle {
    std::vector<std::string> edges;
    S weight;
};

template <class S>
std::vector<PrimeCycle<S>> prime_closed_paths(const WeightedGraph<S>& f, const WeightedGraph<S>& g, std::size_t max_len) {
    if (max_len < 2 || max_len % 2) throw PreconditionError("max_len must be even and at least 2");
    auto all = set_union(f.vertices(), g.vertices());
    std::vector<std::string> verts(all.begin(), all.end());
    std::vector<std::string> ids;
    auto arcs = detail::alternating_arcs(f, g, verts, &ids);
    std::vector<PrimeCycle<S>> out;
    detail::prime_cycles(
        arcs, verts.size(), max_len, [](const auto& a, const auto& b) { return a.side != b.side; },
        [&](const std::vector<std::size_t>& path, const S& w) {
            PrimeCycle<S> c;
            for (auto k : path) c.edges.push_back(ids[k]);
            c.weight = w;
            out.push_back(std::move(c));
        });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.edges < b.edges;
    });
    return out;
}

// value of a measurement; sums of measurements multiply the exact zeta values
template <class S>
struct Measurement {
    bool infinite = false;
    S zeta_inverse = scalar_traits<S>::one();  // 1/ζ_{F•G}(1) = Π (1 - ω(π))
    Complex value{0, 0};

    friend Measurement operator+(const Measurement& a, const Measurement& b) {
        return {a.infinite || b.infinite, a.zeta_inverse * b.zeta_inverse, a.value + b.value};
    }
};

template <class S>
bool measurement_equal(const Measurement<S>& a, const Measurement<S>& b, double tol = 1e-9) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    if (!scalar_traits<S>::near(a.zeta_inverse, b.zeta_inverse, tol)) return false;
    double im = std::remainder(a.value.imag() - b.value.imag(), 2 * std::numbers::pi);
    return std::abs(a.value.real() - b.value.real()) <= tol && std::abs(im) <= tol;
}

namespace detail {

// strongly connected components of the support graph of a square matrix
template <class S>
std::vector<std::vector<std::size_t>> sccs(const Matrix<S>& m) {
    const std::size_t n = m.rows();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = 1;
        for (std::size_t w = 0; w < n; ++w) {
            if (is_zero(m(v, w))) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on[w] = 0;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// ⟦F,G⟧ under m(x) = -log(1-x), computed from the alternation matrix of the cut
template <class S>
Measurement<S> measurement(const WeightedGraph<S>& f, const WeightedGraph<S>& g) {
    using T = scalar_traits<S>;
    auto a = detail::alternation(f, g);
    Measurement<S> out;
    const std::size_t n = a.step.rows();
    if (n == 0) return out;
    out.zeta_inverse = determinant(Matrix<S>::identity(n) - a.step);
    if (is_zero(out.zeta_inverse)) {
        out.infinite = true;
        return out;
    }
    auto roots = poly_roots(to_complex_coeffs(charpoly(a.step)));
    double rho = 0;
    for (auto r : roots) rho = std::max(rho, std::abs(r));
    if (rho < 1.0 - 1e-12) {
        for (auto r : roots) out.value -= std::log(Complex(1.0) - r);
        return out;
    }
    // only finitely many prime cycles when every cyclic component is a single simple cycle
    for (const auto& comp : detail::sccs(a.step)) {
        if (comp.size() == 1 && is_zero(a.step(comp[0], comp[0]))) continue;
        S w = T::one();
        for (auto v : comp) {
            std::size_t succ = 0, nxt = 0;
            for (auto u : comp)
                if (!is_zero(a.step(v, u))) ++succ, nxt = u;
            if (succ != 1) {
                out.infinite = true;
                return out;
            }
            w = w * a.step(v, nxt);
        }
        out.value -= std::log(Complex(1.0) - T::to_complex(w));
    }
    return out;
}

// ⟦F,G⟧ for an arbitrary m, summing over prime cycles up to max_len; nullopt from m marks infinity
template <class S>
Measurement<S> measurement(const WeightedGraph<S>& f, const WeightedGraph<S>& g, const std::function<std::optional<Complex>(const S&)>& m,
                           std::size_t max_len) {
    using T = scalar_traits<S>;
    Measurement<S> out;
    for (const auto& c : prime_closed_paths(f, g, max_len)) {
        out.zeta_inverse = out.zeta_inverse * (T::one() - c.weight);
        auto v = m(c.weight);
        if (!v) out.infinite = true;
        else out.value += *v;
    }
    return out;
}

template <class S>
std::optional<Complex> default_m(const S& w) {
    Complex x = scalar_traits<S>::to_complex(w);
    if (std::abs(Complex(1.0) - x) == 0) return std::nullopt;
    if constexpr (scalar_traits<S>::exact) {
        if (w == scalar_traits<S>::one()) return std::nullopt;
    }
    return -std::log(Complex(1.0) - x);
}

// F•G: length-2 paths of F + Id[V^F\V^G] followed by G + Id[V^G\V^F]
template <class S>
WeightedGraph<S> bullet(const WeightedGraph<S>& f, const WeightedGraph<S>& g) {
    using T = scalar_traits<S>;
    auto all = set_union(f.vertices(), g.vertices());
    LabeledMatrix<S> mf{{all.begin(), all.end()}, Matrix<S>(all.size(), all.size())};
    LabeledMatrix<S> mg = mf;
    for (const auto& e : f.edges()) {
        auto i = *mf.index(e.source), j = *mf.index(e.target);
        mf.m(i, j) = mf.m(i, j) + e.weight;
    }
    for (const auto& v : set_difference(f.vertices(), g.vertices())) {
        auto i = *mf.index(v);
        mf.m(i, i) = mf.m(i, i) + T::one();
    }
    for (const auto& e : g.edges()) {
        auto i = *mg.index(e.source), j = *mg.index(e.target);
        mg.m(i, j) = mg.m(i, j) + e.weight;
    }
    for (const auto& v : set_difference(g.vertices(), f.vertices())) {
        auto i = *mg.index(v);
        mg.m(i, i) = mg.m(i, i) + T::one();
    }
    return from_labeled_matrix(LabeledMatrix<S>{mf.labels, mf.m * mg.m});
}

}  // namespace ig
