#pragma once

#include "ig/errors.hpp"
#include "ig/kernel.hpp"
#include "ig/linalg.hpp"
#include "ig/scalar.hpp"
#include "ig/series.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ig {

// finite measured space; mass defaults to counting measure
class FiniteSpace {
public:
    FiniteSpace() = default;
    explicit FiniteSpace(const std::set<std::string>& pts) {
        for (const auto& p : pts) add_point(p);
    }

    FiniteSpace& add_point(const std::string& p, const Rational& mass = 1) {
        if (mass <= 0) throw PreconditionError("point " + p + ": mass must be positive");
        if (!mass_.emplace(p, mass).second) throw PreconditionError("duplicate point " + p);
        return *this;
    }
    void set_mass(const std::string& p, const Rational& mass) {
        if (!contains(p)) throw PreconditionError("unknown point " + p);
        if (mass <= 0) throw PreconditionError("point " + p + ": mass must be positive");
        mass_[p] = mass;
    }

    bool contains(const std::string& p) const { return mass_.count(p) > 0; }
    const Rational& mass(const std::string& p) const {
        auto it = mass_.find(p);
        if (it == mass_.end()) throw PreconditionError("unknown point " + p);
        return it->second;
    }
    Rational mass(const std::set<std::string>& s) const {
        Rational m = 0;
        for (const auto& p : s) m += mass(p);
        return m;
    }
    std::set<std::string> points() const {
        std::set<std::string> out;
        for (const auto& [p, m] : mass_) out.insert(p);
        return out;
    }
    std::size_t size() const { return mass_.size(); }
    const std::map<std::string, Rational>& masses() const { return mass_; }

    friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) { return a.mass_ == b.mass_; }

private:
    std::map<std::string, Rational> mass_;
};

// generators act by total maps; a word applies its letters left to right
class MonoidAction {
public:
    MonoidAction() = default;
    explicit MonoidAction(std::set<std::string> points) : points_(std::move(points)) {}

    MonoidAction& add_generator(const std::string& name, std::map<std::string, std::string> f) {
        for (const auto& p : points_) {
            auto it = f.find(p);
            if (it == f.end()) f[p] = p;  // unspecified points stay put
            else if (!points_.count(it->second)) throw PreconditionError("generator " + name + ": image outside the space");
        }
        for (const auto& [x, y] : f)
            if (!points_.count(x)) throw PreconditionError("generator " + name + ": unknown point " + x);
        if (!gens_.emplace(name, std::move(f)).second) throw PreconditionError("duplicate generator " + name);
        return *this;
    }
    bool has_generator(const std::string& g) const { return gens_.count(g) > 0; }
    const std::map<std::string, std::map<std::string, std::string>>& generators() const { return gens_; }
    const std::set<std::string>& points() const { return points_; }

    std::string apply(const std::vector<std::string>& word, std::string x) const {
        for (const auto& g : word) {
            auto it = gens_.find(g);
            if (it == gens_.end()) throw PreconditionError("unknown generator " + g);
            x = it->second.at(x);
        }
        return x;
    }

private:
    std::set<std::string> points_;
    std::map<std::string, std::map<std::string, std::string>> gens_;
};

template <class S>
struct GraphingEdge {
    std::string id;
    std::set<std::string> source;
    std::vector<std::string> word;
    S weight;
};

template <class S>
class GraphingRep {
public:
    GraphingRep() = default;
    GraphingRep(FiniteSpace space, MonoidAction action) : space_(std::move(space)), action_(std::move(action)) {
        if (action_.points() != space_.points()) throw PreconditionError("action and space have different points");
    }

    GraphingRep& add_edge(std::string id, std::set<std::string> source, std::vector<std::string> word, S weight) {
        for (const auto& p : source)
            if (!space_.contains(p)) throw PreconditionError("edge " + id + ": unknown point " + p);
        for (const auto& g : word)
            if (!action_.has_generator(g)) throw PreconditionError("edge " + id + ": unknown generator " + g);
        for (const auto& e : edges_)
            if (e.id == id) throw PreconditionError("duplicate edge id " + id);
        edges_.push_back({std::move(id), std::move(source), std::move(word), std::move(weight)});
        return *this;
    }

    const FiniteSpace& space() const { return space_; }
    const MonoidAction& action() const { return action_; }
    const std::vector<GraphingEdge<S>>& edges() const { return edges_; }
    std::string realize(const GraphingEdge<S>& e, const std::string& x) const { return action_.apply(e.word, x); }

private:
    FiniteSpace space_;
    MonoidAction action_;
    std::vector<GraphingEdge<S>> edges_;
};

struct PartialMap {
    std::map<std::string, std::string> map;  // domain -> image

    std::set<std::string> domain() const {
        std::set<std::string> d;
        for (const auto& [x, y] : map) d.insert(x);
        return d;
    }
    std::optional<std::string> operator()(const std::string& x) const {
        auto it = map.find(x);
        if (it == map.end()) return std::nullopt;
        return it->second;
    }
    bool injective() const {
        std::set<std::string> img;
        for (const auto& [x, y] : map)
            if (!img.insert(y).second) return false;
        return true;
    }
    friend bool operator==(const PartialMap& a, const PartialMap& b) { return a.map == b.map; }
};

// x ↦ g(f(x))
inline PartialMap then(const PartialMap& f, const PartialMap& g) {
    PartialMap h;
    for (const auto& [x, y] : f.map)
        if (auto z = g(y)) h.map[x] = *z;
    return h;
}

namespace detail {

inline void same_space(const FiniteSpace& a, const FiniteSpace& b) {
    if (!(a == b)) throw PreconditionError("graphings live on different spaces");
}

template <class S>
bool is_real_scalar(const S& s) {
    if constexpr (std::is_same_v<S, GaussRational>) return s.is_real();
    else if constexpr (std::is_same_v<S, Complex>) return s.imag() == 0;
    else return true;
}

template <class R, class S>
R real_value(const S& s) {
    if (!is_real_scalar(s)) throw PreconditionError("complex weight where a probability is required");
    if constexpr (std::is_same_v<S, GaussRational>) {
        if constexpr (std::is_same_v<R, Rational>) return s.re();
        else return s.re().get_d();
    } else if constexpr (std::is_same_v<S, Complex>) {
        if constexpr (std::is_same_v<R, Rational>) return Rational(s.real());
        else return s.real();
    } else if constexpr (std::is_same_v<R, S>) {
        return s;
    } else if constexpr (std::is_same_v<S, Rational>) {
        return s.get_d();
    } else {
        return Rational(s);
    }
}

}  // namespace detail

// canonical form: the induced weighted relation, zero entries dropped
template <class S>
std::map<std::pair<std::string, std::string>, S> induced_relation(const GraphingRep<S>& g) {
    std::map<std::pair<std::string, std::string>, S> rel;
    for (const auto& e : g.edges())
        for (const auto& x : e.source) {
            auto& slot = rel[{x, g.realize(e, x)}];
            slot = slot + e.weight;
        }
    for (auto it = rel.begin(); it != rel.end();) {
        if (is_zero(it->second)) it = rel.erase(it);
        else ++it;
    }
    return rel;
}

template <class S>
bool equivalent(const GraphingRep<S>& f, const GraphingRep<S>& g) {
    detail::same_space(f.space(), g.space());
    auto a = induced_relation(f), b = induced_relation(g);
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first || !scalar_traits<S>::near(ia->second, ib->second, 1e-12)) return false;
    return true;
}

// F ≤ G: the edges of F split into families, one per edge of G, with disjoint sources covering it,
// the same weight and the same realizer on those sources
template <class S>
bool refines(const GraphingRep<S>& f, const GraphingRep<S>& g) {
    detail::same_space(f.space(), g.space());
    const auto& fe = f.edges();
    const auto& ge = g.edges();
    std::vector<std::vector<std::size_t>> cand(fe.size());
    for (std::size_t i = 0; i < fe.size(); ++i)
        for (std::size_t j = 0; j < ge.size(); ++j) {
            if (!scalar_traits<S>::near(fe[i].weight, ge[j].weight, 1e-12)) continue;
            bool ok = std::includes(ge[j].source.begin(), ge[j].source.end(), fe[i].source.begin(), fe[i].source.end());
            for (const auto& x : fe[i].source)
                if (ok && f.realize(fe[i], x) != g.realize(ge[j], x)) ok = false;
            if (ok) cand[i].push_back(j);
        }
    std::vector<std::set<std::string>> covered(ge.size());
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == fe.size()) {
            for (std::size_t j = 0; j < ge.size(); ++j)
                if (covered[j] != ge[j].source) return false;
            return true;
        }
        for (auto j : cand[i]) {
            bool disjoint = true;
            for (const auto& x : fe[i].source)
                if (covered[j].count(x)) disjoint = false;
            if (!disjoint) continue;
            covered[j].insert(fe[i].source.begin(), fe[i].source.end());
            if (place(i + 1)) return true;
            for (const auto& x : fe[i].source) covered[j].erase(x);
        }
        return false;
    };
    return place(0);
}

template <class S>
bool is_deterministic(const GraphingRep<S>& g) {
    std::set<std::string> seen;
    for (const auto& e : g.edges()) {
        if (e.source.empty() || is_zero(e.weight)) continue;
        if (!(e.weight == scalar_traits<S>::one())) return false;
        for (const auto& x : e.source)
            if (!seen.insert(x).second) return false;
    }
    return true;
}

template <class S>
PartialMap to_partial_map(const GraphingRep<S>& g) {
    if (!is_deterministic(g)) throw PreconditionError("graphing is not deterministic");
    PartialMap f;
    for (const auto& e : g.edges()) {
        if (e.source.empty() || is_zero(e.weight)) continue;
        for (const auto& x : e.source) f.map[x] = g.realize(e, x);
    }
    return f;
}

// a single edge realised by the generator "f" (identity off the domain)
template <class S>
GraphingRep<S> from_partial_map(const FiniteSpace& space, const PartialMap& f) {
    for (const auto& [x, y] : f.map)
        if (!space.contains(x) || !space.contains(y)) throw PreconditionError("partial map leaves the space");
    MonoidAction act(space.points());
    act.add_generator("f", f.map);
    GraphingRep<S> g(space, std::move(act));
    if (!f.map.empty()) g.add_edge("e", f.domain(), {"f"}, scalar_traits<S>::one());
    return g;
}

template <class S>
bool is_subprobabilistic(const GraphingRep<S>& g) {
    std::map<std::string, Rational> out;
    if constexpr (scalar_traits<S>::exact) {
        for (const auto& e : g.edges()) {
            Rational w = detail::real_value<Rational>(e.weight);
            if (w < 0 || w > 1) throw PreconditionError("edge " + e.id + ": weight outside [0,1]");
            for (const auto& x : e.source) out[x] += w;
        }
        for (const auto& [x, s] : out)
            if (s > 1) return false;
        return true;
    } else {
        std::map<std::string, double> sums;
        for (const auto& e : g.edges()) {
            double w = detail::real_value<double>(e.weight);
            if (w < 0 || w > 1) throw PreconditionError("edge " + e.id + ": weight outside [0,1]");
            for (const auto& x : e.source) sums[x] += w;
        }
        for (const auto& [x, s] : sums)
            if (s > 1 + 1e-12) return false;
        return true;
    }
}

template <class R, class S>
SubMarkovKernel<std::string, R> to_kernel(const GraphingRep<S>& g) {
    if (!is_subprobabilistic(g)) throw PreconditionError("graphing is not sub-probabilistic");
    typename SubMarkovKernel<std::string, R>::Rows rows;
    for (const auto& e : g.edges()) {
        R w = detail::real_value<R>(e.weight);
        for (const auto& x : e.source) {
            auto& slot = rows[x][g.realize(e, x)];
            slot = slot + w;
        }
    }
    auto pts = g.space().points();
    return {pts, pts, std::move(rows)};
}

// one edge per kernel entry, realised by the constant generator "to:y"
template <class S, class R>
GraphingRep<S> from_kernel(const FiniteSpace& space, const SubMarkovKernel<std::string, R>& k) {
    auto pts = space.points();
    if (k.source() != pts || k.target() != pts) throw PreconditionError("kernel must live on the graphing's space");
    MonoidAction act(pts);
    std::set<std::string> targets;
    for (const auto& [x, row] : k.rows())
        for (const auto& [y, w] : row) targets.insert(y);
    for (const auto& y : targets) {
        std::map<std::string, std::string> c;
        for (const auto& p : pts) c[p] = y;
        act.add_generator("to:" + y, std::move(c));
    }
    GraphingRep<S> g(space, std::move(act));
    for (const auto& [x, row] : k.rows())
        for (const auto& [y, w] : row) {
            S s;
            if constexpr (std::is_same_v<S, GaussRational>) s = GaussRational(detail::real_value<Rational>(w));
            else if constexpr (std::is_same_v<S, Complex>) s = Complex(detail::real_value<double>(w), 0);
            else s = detail::real_value<S>(w);
            g.add_edge(x + "->" + y, {x}, {"to:" + y}, s);
        }
    return g;
}

namespace detail {

inline std::string tag_in(const std::string& x) { return "in|" + x; }
inline std::string tag_out(char side, const std::string& y) { return std::string(1, side) + "out|" + y; }
inline std::string tag_cut(char side, const std::string& c) { return std::string(1, side) + "cut|" + c; }  // arrived by `side`

template <class S>
void check_execution_inputs(const GraphingRep<S>& f, const GraphingRep<S>& g, const std::set<std::string>& cut) {
    same_space(f.space(), g.space());
    for (const auto& c : cut)
        if (!f.space().contains(c)) throw PreconditionError("cut point " + c + " is not in the space");
    std::set<std::string> fs;
    for (const auto& e : f.edges())
        if (!is_zero(e.weight)) fs.insert(e.source.begin(), e.source.end());
    for (const auto& e : g.edges())
        if (!is_zero(e.weight))
            for (const auto& x : e.source)
                if (fs.count(x) && !cut.count(x)) throw PreconditionError("point " + x + " outside the cut is a source of both graphings");
}

}  // namespace detail

// F::G through `cut`: each cut point is split by the side that produced it, the two kernels are plugged
// and the result is read back on the space
template <class R, class S>
GraphingRep<S> execute_graphing(const GraphingRep<S>& f, const GraphingRep<S>& g, const std::set<std::string>& cut) {
    using detail::tag_cut;
    using detail::tag_in;
    using detail::tag_out;
    detail::check_execution_inputs(f, g, cut);
    const auto pts = f.space().points();
    const auto ext = pset_difference(pts, cut);
    auto kf = to_kernel<R>(f), kg = to_kernel<R>(g);
    auto owner = [&](const std::string& x) -> char {
        if (!kf.row(x).empty()) return 'F';
        if (!kg.row(x).empty()) return 'G';
        return 'F';
    };
    auto build = [&](const SubMarkovKernel<std::string, R>& k, char side, char other) {
        std::set<std::string> src, tgt;
        for (const auto& x : ext)
            if (owner(x) == side) src.insert(tag_in(x));
        for (const auto& c : cut) src.insert(tag_cut(other, c));
        for (const auto& y : ext) tgt.insert(tag_out(side, y));
        for (const auto& c : cut) tgt.insert(tag_cut(side, c));
        typename SubMarkovKernel<std::string, R>::Rows rows;
        auto emit = [&](const std::string& from, const std::string& x) {
            for (const auto& [y, w] : k.row(x)) rows[from][cut.count(y) ? tag_cut(side, y) : tag_out(side, y)] = w;
        };
        for (const auto& x : ext)
            if (owner(x) == side) emit(tag_in(x), x);
        for (const auto& c : cut) emit(tag_cut(other, c), c);
        return SubMarkovKernel<std::string, R>(std::move(src), std::move(tgt), std::move(rows));
    };
    auto res = plug(build(kf, 'F', 'G'), build(kg, 'G', 'F'));
    typename SubMarkovKernel<std::string, R>::Rows rows;
    for (const auto& x : ext)
        for (const auto& [t, w] : res.row(tag_in(x))) {
            auto& slot = rows[x][t.substr(t.find('|') + 1)];
            slot = slot + w;
        }
    return from_kernel<S>(f.space(), SubMarkovKernel<std::string, R>(pts, pts, std::move(rows)));
}

// oracle for deterministic inputs: alternate the two partial maps until leaving the cut
template <class S>
PartialMap execute_deterministic(const GraphingRep<S>& f, const GraphingRep<S>& g, const std::set<std::string>& cut) {
    detail::check_execution_inputs(f, g, cut);
    auto pf = to_partial_map(f), pg = to_partial_map(g);
    PartialMap out;
    for (const auto& x : pset_difference(f.space().points(), cut)) {
        bool on_f = pf(x).has_value();
        if (!on_f && !pg(x)) continue;
        std::string cur = x;
        std::set<std::pair<std::string, bool>> seen;
        while (true) {
            auto nxt = on_f ? pf(cur) : pg(cur);
            if (!nxt) break;
            if (!cut.count(*nxt)) {
                out.map[x] = *nxt;
                break;
            }
            if (!seen.emplace(*nxt, on_f).second) break;  // trapped in a cycle inside the cut
            cur = *nxt;
            on_f = !on_f;
        }
    }
    return out;
}

// μ(Fix f^m)
inline Rational fix_count(const FiniteSpace& space, const PartialMap& f, int m) {
    if (m < 1) throw PreconditionError("m must be at least 1");
    Rational total = 0;
    for (const auto& [x, y0] : f.map) {
        std::optional<std::string> y = x;
        for (int i = 0; i < m && y; ++i) y = f(*y);
        if (y && *y == x) total += space.mass(x);
    }
    return total;
}

inline LogZeta<Rational> artin_mazur_zeta(const FiniteSpace& space, const PartialMap& f, int k) {
    if (k < 1) throw PreconditionError("order K must be at least 1");
    TruncatedSeries<Rational> l(k);
    for (int m = 1; m <= k; ++m) l[m] = fix_count(space, f, m) / m;
    return LogZeta<Rational>(l);
}

// Σ_m z^m/m Σ_{x ∈ Fix f^m} μ(x) tr(φ(x) φ(f x) ... φ(f^{m-1} x))
template <class S>
LogZeta<S> ruelle_zeta(const FiniteSpace& space, const PartialMap& f, const std::map<std::string, Matrix<S>>& phi, int k) {
    if (k < 1) throw PreconditionError("order K must be at least 1");
    std::optional<std::size_t> dim;
    for (const auto& p : space.points()) {
        auto it = phi.find(p);
        if (it == phi.end()) throw PreconditionError("phi is not defined at " + p);
        if (it->second.rows() != it->second.cols() || (dim && *dim != it->second.rows()))
            throw PreconditionError("phi values have mismatched dimensions");
        dim = it->second.rows();
    }
    TruncatedSeries<S> l(k);
    for (int m = 1; m <= k; ++m) {
        S acc = scalar_traits<S>::zero();
        for (const auto& [x, y0] : f.map) {
            std::optional<std::string> y = x;
            Matrix<S> prod = Matrix<S>::identity(*dim);
            for (int i = 0; i < m && y; ++i) {
                prod = prod * phi.at(*y);
                y = f(*y);
            }
            if (y && *y == x) acc = acc + from_rational<S>(space.mass(x)) * prod.trace();
        }
        l[m] = acc / from_int<S>(m);
    }
    return LogZeta<S>(l);
}

// periodic orbits of h = g∘f, as (mass of the orbit, length)
struct Orbit {
    std::vector<std::string> points;
    Rational mass;
    int length;
};

inline std::vector<Orbit> alternating_orbits(const FiniteSpace& space, const PartialMap& f, const PartialMap& g) {
    if (!f.injective() || !g.injective()) throw PreconditionError("measurement needs measure-preserving (injective) maps");
    auto h = then(f, g);
    std::vector<Orbit> out;
    std::set<std::string> done;
    for (const auto& [x, y0] : h.map) {
        if (done.count(x)) continue;
        std::vector<std::string> orbit{x};
        std::optional<std::string> y = h(x);
        while (y && *y != x && orbit.size() <= h.map.size()) {
            orbit.push_back(*y);
            y = h(*y);
        }
        if (!y || *y != x) continue;
        Orbit o{orbit, 0, static_cast<int>(orbit.size())};
        for (const auto& p : orbit) {
            o.mass += space.mass(p);
            done.insert(p);
        }
        out.push_back(std::move(o));
    }
    return out;
}

// ⟦f,g⟧_m = Σ_O μ(O) m(ω^ρ)/ρ with ω the weight carried by each alternating step pair
template <class V>
V graphing_measurement(const FiniteSpace& space, const PartialMap& f, const PartialMap& g,
                       const std::function<V(const Rational&)>& m, const Rational& weight = 1) {
    V total{};
    for (const auto& o : alternating_orbits(space, f, g)) {
        Rational w = 1;
        for (int i = 0; i < o.length; ++i) w *= weight;
        Rational scale = o.mass / o.length;
        if constexpr (std::is_same_v<V, Rational>) total += scale * m(w);
        else total += scale.get_d() * m(w);
    }
    return total;
}

// exp(⟦ω·f, g⟧) under m(x) = -log(1-x), as Π_O (1-ω^ρ)^{-μ(O)/ρ}; factors as (base, exponent)
inline std::vector<std::pair<Rational, Rational>> graphing_measurement_factors(const FiniteSpace& space, const PartialMap& f,
                                                                               const PartialMap& g, const Rational& weight) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& o : alternating_orbits(space, f, g)) {
        Rational w = 1;
        for (int i = 0; i < o.length; ++i) w *= weight;
        out.emplace_back(1 - w, -o.mass / o.length);
    }
    return out;
}

// 0/1 transition matrix of a partial map, points in sorted order
inline Matrix<Rational> partial_map_matrix(const FiniteSpace& space, const PartialMap& f) {
    auto pts = space.points();
    std::vector<std::string> idx(pts.begin(), pts.end());
    auto at = [&](const std::string& p) { return static_cast<std::size_t>(std::lower_bound(idx.begin(), idx.end(), p) - idx.begin()); };
    Matrix<Rational> m(idx.size(), idx.size());
    for (const auto& [x, y] : f.map) m(at(x), at(y)) = 1;
    return m;
}

}  // namespace ig
