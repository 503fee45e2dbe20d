#pragma once

#include "ig/errors.hpp"
#include "ig/graph.hpp"
#include "ig/linalg.hpp"
#include "ig/series.hpp"

#include <string>
#include <vector>

namespace ig {

enum class ZetaConvention { DegreeTracking, LiteralWeighted };

namespace detail {

// prime cycles of a single graph (no alternation), as (length, weight)
template <class S>
std::vector<std::pair<std::size_t, S>> graph_prime_cycles(const WeightedGraph<S>& g, std::size_t max_len) {
    std::vector<std::string> verts(g.vertices().begin(), g.vertices().end());
    auto arcs = alternating_arcs(g, WeightedGraph<S>{}, verts);
    std::vector<std::pair<std::size_t, S>> out;
    prime_cycles(
        arcs, verts.size(), max_len, [](const auto&, const auto&) { return true; },
        [&](const std::vector<std::size_t>& path, const S& w) { out.emplace_back(path.size(), w); });
    return out;
}

}  // namespace detail

// log-sum over prime cycles, then exponentiated
template <class S>
TruncatedSeries<S> zeta_series(const WeightedGraph<S>& g, int k, ZetaConvention conv = ZetaConvention::DegreeTracking) {
    if (k < 1) throw PreconditionError("order K must be at least 1");
    // the zeta function only sees M(G), so parallel edges can be merged first in degree-tracking mode
    const WeightedGraph<S> h = conv == ZetaConvention::DegreeTracking ? simple_collapse(g) : g;
    TruncatedSeries<S> log(k);
    for (const auto& [len, w] : detail::graph_prime_cycles(h, static_cast<std::size_t>(k))) {
        const std::size_t step = conv == ZetaConvention::DegreeTracking ? len : 1;
        S pw = w;
        for (std::size_t j = 1; j * step <= static_cast<std::size_t>(k); ++j) {
            log[j * step] = log[j * step] + pw / from_int<S>(static_cast<long>(j));
            pw = pw * w;
        }
    }
    return series_exp(LogZeta<S>(log));
}

template <class S>
RationalFunction<S> zeta_det(const WeightedGraph<S>& g) {
    return RationalFunction<S>::inverse_of(det_one_minus_z(transition_matrix(g).m));
}

template <class S>
std::vector<S> closed_walk_counts(const WeightedGraph<S>& g, int n_max) {
    if (n_max < 1) throw PreconditionError("n_max must be at least 1");
    return power_traces(transition_matrix(g).m, n_max);
}

template <class S>
struct CocycleReport {
    bool holds = false;         // as truncated series
    bool holds_at_one = false;  // det(I − M) products, exact
    double max_coefficient_gap = 0;
    TruncatedSeries<S> lhs, rhs;
    RationalFunction<S> lhs_rational, rhs_rational;
};

// ζ_{F•(G∷H)} ζ_{G•H} against ζ_{G•(H∷F)} ζ_{H•F}
template <class S>
CocycleReport<S> cocycle_check(const WeightedGraph<S>& f, const WeightedGraph<S>& g, const WeightedGraph<S>& h, int k) {
    if (!set_intersection(set_intersection(f.vertices(), g.vertices()), h.vertices()).empty())
        throw PreconditionError("cocycle: V^F, V^G and V^H must have empty common intersection");
    const auto fgh = bullet(f, execute(g, h)), gh = bullet(g, h), ghf = bullet(g, execute(h, f)), hf = bullet(h, f);
    CocycleReport<S> r;
    r.lhs_rational = zeta_det(fgh) * zeta_det(gh);
    r.rhs_rational = zeta_det(ghf) * zeta_det(hf);
    r.lhs = rational_to_series(zeta_det(fgh), k) * rational_to_series(zeta_det(gh), k);
    r.rhs = rational_to_series(zeta_det(ghf), k) * rational_to_series(zeta_det(hf), k);
    r.max_coefficient_gap = max_gap(r.lhs, r.rhs);
    r.holds = r.lhs == r.rhs && r.lhs_rational == r.rhs_rational;
    auto d1 = [](const WeightedGraph<S>& x) { return det_one_minus_z(transition_matrix(x).m)(scalar_traits<S>::one()); };
    const S l1 = d1(fgh) * d1(gh), r1 = d1(ghf) * d1(hf);
    if constexpr (scalar_traits<S>::exact) r.holds_at_one = l1 == r1;
    else r.holds_at_one = std::abs(Complex(l1) - Complex(r1)) <= 1e-9 * (1 + std::abs(Complex(l1)));
    return r;
}

}  // namespace ig
