#pragma once

#include "ig/errors.hpp"
#include "ig/linalg.hpp"
#include "ig/scalar.hpp"
#include "ig/series.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ig {

template <class P>
std::set<P> pset_intersection(const std::set<P>& a, const std::set<P>& b) {
    std::set<P> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class P>
std::set<P> pset_difference(const std::set<P>& a, const std::set<P>& b) {
    std::set<P> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class P>
std::set<P> pset_union(std::set<P> a, const std::set<P>& b) {
    a.insert(b.begin(), b.end());
    return a;
}

// finite sub-Markov kernel from `source` to `target`, sparse rows; R is Rational or double
template <class P, class R = Rational>
class SubMarkovKernel {
public:
    using Row = std::map<P, R>;
    using Rows = std::map<P, Row>;

    SubMarkovKernel() = default;
    SubMarkovKernel(std::set<P> source, std::set<P> target, Rows rows = {})
        : source_(std::move(source)), target_(std::move(target)) {
        for (auto& [x, row] : rows)
            for (auto& [y, w] : row) add(x, y, w);
        validate();
    }

    const std::set<P>& source() const { return source_; }
    const std::set<P>& target() const { return target_; }
    const Rows& rows() const { return rows_; }
    std::set<P> cut() const { return pset_intersection(source_, target_); }

    template <class U, class Fn>
    SubMarkovKernel<P, U> map_weights(Fn fn) const {
        typename SubMarkovKernel<P, U>::Rows rows;
        for (const auto& [x, row] : rows_)
            for (const auto& [y, w] : row) rows[x][y] = fn(w);
        return SubMarkovKernel<P, U>(source_, target_, std::move(rows));
    }

    R operator()(const P& x, const P& y) const {
        auto it = rows_.find(x);
        if (it == rows_.end()) return scalar_traits<R>::zero();
        auto jt = it->second.find(y);
        return jt == it->second.end() ? scalar_traits<R>::zero() : jt->second;
    }
    const Row& row(const P& x) const {
        static const Row empty;
        auto it = rows_.find(x);
        return it == rows_.end() ? empty : it->second;
    }
    R row_sum(const P& x) const {
        R s = scalar_traits<R>::zero();
        for (const auto& [y, w] : row(x)) s = s + w;
        return s;
    }
    std::size_t entry_count() const {
        std::size_t n = 0;
        for (const auto& [x, row] : rows_) n += row.size();
        return n;
    }

    friend bool operator==(const SubMarkovKernel& a, const SubMarkovKernel& b) {
        if (a.source_ != b.source_ || a.target_ != b.target_) return false;
        if constexpr (scalar_traits<R>::exact) {
            return a.rows_ == b.rows_;
        } else {
            return max_entry_gap(a, b) <= 1e-9;
        }
    }

    friend double max_entry_gap(const SubMarkovKernel& a, const SubMarkovKernel& b) {
        double gap = 0;
        auto scan = [&](const SubMarkovKernel& u, const SubMarkovKernel& v) {
            for (const auto& [x, row] : u.rows_)
                for (const auto& [y, w] : row) gap = std::max(gap, scalar_traits<R>::abs(w - v(x, y)));
        };
        scan(a, b);
        scan(b, a);
        return gap;
    }

private:
    void add(const P& x, const P& y, const R& w) {
        if (!source_.count(x)) throw PreconditionError("kernel entry outside the source space");
        if (!target_.count(y)) throw PreconditionError("kernel entry outside the target space");
        if (ig::is_zero(w)) return;
        auto& slot = rows_[x][y];
        slot = slot + w;
    }

    void validate() const {
        const R one = scalar_traits<R>::one();
        const double slack = scalar_traits<R>::exact ? 0.0 : 1e-12;
        for (const auto& [x, row] : rows_) {
            R s = scalar_traits<R>::zero();
            for (const auto& [y, w] : row) {
                if (w < scalar_traits<R>::zero()) throw PreconditionError("negative kernel entry");
                s = s + w;
            }
            if constexpr (scalar_traits<R>::exact) {
                if (s > one) throw PreconditionError("kernel row sum exceeds 1");
            } else {
                if (s > one + slack) throw PreconditionError("kernel row sum exceeds 1");
            }
        }
    }

    std::set<P> source_, target_;
    Rows rows_;
};

template <class P, class R>
SubMarkovKernel<P, R> identity_on(const std::set<P>& s) {
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& p : s) rows[p][p] = scalar_traits<R>::one();
    return {s, s, std::move(rows)};
}

template <class P, class R>
SubMarkovKernel<P, R> zero_kernel(const std::set<P>& source, const std::set<P>& target) {
    return {source, target};
}

template <class P, class R>
SubMarkovKernel<P, R> kernel_compose(const SubMarkovKernel<P, R>& k1, const SubMarkovKernel<P, R>& k2) {
    if (k1.target() != k2.source()) throw PreconditionError("compose: inner spaces differ");
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& [x, row] : k1.rows())
        for (const auto& [y, w] : row)
            for (const auto& [z, v] : k2.row(y)) {
                auto& slot = rows[x][z];
                slot = slot + w * v;
            }
    return {k1.source(), k2.target(), std::move(rows)};
}

// parallel composition; sources and targets must be disjoint
template <class P, class R>
SubMarkovKernel<P, R> kernel_sum(const SubMarkovKernel<P, R>& a, const SubMarkovKernel<P, R>& b) {
    if (!pset_intersection(a.source(), b.source()).empty() || !pset_intersection(a.target(), b.target()).empty())
        throw PreconditionError("kernel sum: overlapping spaces");
    auto rows = a.rows();
    for (const auto& [x, row] : b.rows()) rows[x] = row;
    return {pset_union(a.source(), b.source()), pset_union(a.target(), b.target()), std::move(rows)};
}

// κ_f(x, ·) = δ_{f(x)}; points outside the domain of f get the zero row
template <class P, class R>
SubMarkovKernel<P, R> from_function(const std::set<P>& source, const std::set<P>& target, const std::map<P, P>& f) {
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& [x, y] : f) rows[x][y] = scalar_traits<R>::one();
    return {source, target, std::move(rows)};
}

// κ*_f(y, ·) = Σ_{f(x)=y} δ_x; sub-Markov only when f is injective
template <class P, class R>
SubMarkovKernel<P, R> from_function_star(const std::set<P>& source, const std::set<P>& target, const std::map<P, P>& f) {
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& [x, y] : f) rows[y][x] = scalar_traits<R>::one();
    return {target, source, std::move(rows)};
}

// κ̄ = κ ⊗ id_D
template <class P, class Q, class R>
SubMarkovKernel<std::pair<P, Q>, R> with_dialect(const SubMarkovKernel<P, R>& k, const std::set<Q>& dialect) {
    std::set<std::pair<P, Q>> src, tgt;
    for (const auto& x : k.source())
        for (const auto& d : dialect) src.emplace(x, d);
    for (const auto& y : k.target())
        for (const auto& d : dialect) tgt.emplace(y, d);
    typename SubMarkovKernel<std::pair<P, Q>, R>::Rows rows;
    for (const auto& [x, row] : k.rows())
        for (const auto& [y, w] : row)
            for (const auto& d : dialect) rows[{x, d}][{y, d}] = w;
    return {std::move(src), std::move(tgt), std::move(rows)};
}

template <class P, class R>
SubMarkovKernel<P, R> rename(const SubMarkovKernel<P, R>& k, const std::function<P(const P&)>& f) {
    std::set<P> src, tgt;
    for (const auto& x : k.source()) src.insert(f(x));
    for (const auto& y : k.target()) tgt.insert(f(y));
    if (src.size() != k.source().size() || tgt.size() != k.target().size()) throw PreconditionError("rename is not injective");
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& [x, row] : k.rows())
        for (const auto& [y, w] : row) rows[f(x)][f(y)] = w;
    return {std::move(src), std::move(tgt), std::move(rows)};
}

template <class P, class R>
SubMarkovKernel<P, R> restrict_kernel(const SubMarkovKernel<P, R>& k, const std::set<P>& source, const std::set<P>& target) {
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& [x, row] : k.rows()) {
        if (!source.count(x)) continue;
        for (const auto& [y, w] : row)
            if (target.count(y)) rows[x][y] = w;
    }
    return {source, target, std::move(rows)};
}

// κ^{(k)}: chains of length k whose k-1 intermediate points stay in the cut
template <class P, class R>
SubMarkovKernel<P, R> iterated(const SubMarkovKernel<P, R>& k, int n) {
    if (n < 1) throw PreconditionError("iteration index must be at least 1");
    const auto cut = k.cut();
    auto cur = k.rows();
    for (int step = 1; step < n; ++step) {
        typename SubMarkovKernel<P, R>::Rows next;
        for (const auto& [x, row] : cur)
            for (const auto& [c, w] : row) {
                if (!cut.count(c)) continue;
                for (const auto& [y, v] : k.row(c)) {
                    auto& slot = next[x][y];
                    slot = slot + w * v;
                }
            }
        cur = std::move(next);
    }
    return SubMarkovKernel<P, R>(k.source(), k.target(), std::move(cur));
}

// tr(κ) = Σ_n κ^{(n)} restricted to (X\Y) × (Y\X), by eliminating cut points one at a time
template <class P, class R>
SubMarkovKernel<P, R> exec_kernel(const SubMarkovKernel<P, R>& k) {
    using T = scalar_traits<R>;
    const auto cut = k.cut();
    const auto in = pset_difference(k.source(), k.target());
    const auto out = pset_difference(k.target(), k.source());
    std::map<P, std::map<P, R>> w = k.rows();
    std::map<P, std::set<P>> preds;
    for (const auto& [x, row] : w)
        for (const auto& [y, v] : row) preds[y].insert(x);
    for (const auto& c : cut) {
        R loop = T::zero();
        auto& crow = w[c];
        if (auto it = crow.find(c); it != crow.end()) {
            loop = it->second;
            crow.erase(it);
            preds[c].erase(c);
        }
        const bool closed = T::exact ? loop == T::one() : loop >= T::one() - R(1e-12);
        std::map<P, R> leave = std::move(crow);
        w.erase(c);
        for (const auto& [y, v] : leave) preds[y].erase(c);
        for (const auto& a : preds[c]) {
            auto& arow = w[a];
            auto it = arow.find(c);
            if (it == arow.end()) continue;
            R into = it->second;
            arow.erase(it);
            // mass that reaches a closed loop never leaves the cut
            if (closed) continue;
            R scale = into / (T::one() - loop);
            for (const auto& [y, v] : leave) {
                auto& slot = arow[y];
                slot = slot + scale * v;
                preds[y].insert(a);
            }
        }
        preds.erase(c);
    }
    typename SubMarkovKernel<P, R>::Rows rows;
    for (const auto& x : in) {
        auto it = w.find(x);
        if (it == w.end()) continue;
        for (const auto& [y, v] : it->second)
            if (out.count(y) && !ig::is_zero(v)) rows[x][y] = v;
    }
    if constexpr (!T::exact) {
        // clamp rounding excess so the result stays a valid kernel
        for (auto& [x, row] : rows) {
            R s = 0;
            for (auto& [y, v] : row) s += v;
            if (s > 1) for (auto& [y, v] : row) v /= s;
        }
    }
    return {in, out, std::move(rows)};
}

// oracle: truncated Neumann sum in double precision
template <class P, class R>
SubMarkovKernel<P, double> exec_kernel_series(const SubMarkovKernel<P, R>& k, int max_terms = 10000, double tol = 1e-15) {
    const auto cut = k.cut();
    const auto in = pset_difference(k.source(), k.target());
    const auto out = pset_difference(k.target(), k.source());
    std::map<P, std::map<P, double>> acc;
    for (const auto& x : in) {
        std::map<P, double> front;
        for (const auto& [y, v] : k.row(x)) front[y] = scalar_traits<R>::to_complex(v).real();
        for (int n = 1; n <= max_terms && !front.empty(); ++n) {
            std::map<P, double> next;
            double alive = 0;
            for (const auto& [y, v] : front) {
                if (out.count(y)) acc[x][y] += v;
                if (!cut.count(y)) continue;
                alive += v;
                for (const auto& [z, u] : k.row(y)) next[z] += v * scalar_traits<R>::to_complex(u).real();
            }
            if (alive < tol) break;
            front = std::move(next);
        }
    }
    typename SubMarkovKernel<P, double>::Rows rows;
    for (auto& [x, row] : acc)
        for (auto& [y, v] : row)
            if (v > 0) rows[x][y] = v;
    for (auto& [x, row] : rows) {
        double s = 0;
        for (auto& [y, v] : row) s += v;
        if (s > 1) for (auto& [y, v] : row) v /= s;
    }
    return {in, out, std::move(rows)};
}

// κ•κ' = (κ + id_{Y\X'}) ; (κ' + id_{X'\Y})
template <class P, class R>
SubMarkovKernel<P, R> bullet(const SubMarkovKernel<P, R>& k, const SubMarkovKernel<P, R>& kp) {
    const auto& x = k.source();
    const auto& xp = k.target();
    const auto& y = kp.source();
    const auto& yp = kp.target();
    if (!pset_difference(pset_intersection(x, y), xp).empty())
        throw PreconditionError("bullet: X∩Y must lie inside X'");
    if (!pset_difference(pset_intersection(xp, yp), y).empty())
        throw PreconditionError("bullet: X'∩Y' must lie inside Y");
    auto first = kernel_sum(k, identity_on<P, R>(pset_difference(y, xp)));
    auto second = kernel_sum(kp, identity_on<P, R>(pset_difference(xp, y)));
    return kernel_compose(first, second);
}

template <class P, class R>
SubMarkovKernel<P, R> plug(const SubMarkovKernel<P, R>& k, const SubMarkovKernel<P, R>& kp) {
    return exec_kernel(bullet(k, kp));
}

template <class P, class R>
bool general_position(const SubMarkovKernel<P, R>& k0, const SubMarkovKernel<P, R>& k1, const SubMarkovKernel<P, R>& k2) {
    auto tri = [](const std::set<P>& a, const std::set<P>& b, const std::set<P>& c) {
        return pset_intersection(pset_intersection(a, b), c).empty();
    };
    const auto &x = k0.source(), &xp = k0.target(), &y = k1.source(), &yp = k1.target(), &z = k2.source(), &zp = k2.target();
    return tri(xp, y, z) && tri(yp, z, x) && tri(zp, x, y) && tri(x, yp, zp) && tri(y, zp, xp) && tri(z, xp, yp);
}

namespace detail {

template <class P, class R>
Matrix<R> cut_block(const SubMarkovKernel<P, R>& k) {
    const auto cut = k.cut();
    std::vector<P> pts(cut.begin(), cut.end());
    Matrix<R> c(pts.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (const auto& [y, w] : k.row(pts[i])) {
            auto it = std::lower_bound(pts.begin(), pts.end(), y);
            if (it != pts.end() && *it == y) c(i, static_cast<std::size_t>(it - pts.begin())) = w;
        }
    return c;
}

}  // namespace detail

// ∫_{X∩Y} ζ_κ(x, ẋ, n) = μ · tr(Cⁿ)
template <class P, class R>
R zeta_orbit_mass(const SubMarkovKernel<P, R>& k, int n, const R& mu = scalar_traits<R>::one()) {
    if (n < 1) throw PreconditionError("orbit length must be at least 1");
    auto c = detail::cut_block(k);
    if (c.rows() == 0) return scalar_traits<R>::zero();
    return mu * power_traces(c, n).back();
}

// ζ_κ as a log-series and as det(I - zC)^{-μ} (base^μ)
template <class R>
struct KernelZeta {
    LogZeta<R> log;
    RationalFunction<R> base;
    Rational mu{1};
};

template <class P, class R>
KernelZeta<R> kernel_zeta(const SubMarkovKernel<P, R>& k, int order = kDefaultOrder, const Rational& mu = 1) {
    if (order < 1) throw PreconditionError("order K must be at least 1");
    auto c = detail::cut_block(k);
    const R m = from_rational<R>(mu);
    TruncatedSeries<R> l(order);
    if (c.rows() > 0) {
        auto tr = power_traces(c, order);
        for (int n = 1; n <= order; ++n) l[n] = m * tr[n - 1] / from_int<R>(n);
    }
    return {LogZeta<R>(l), RationalFunction<R>::inverse_of(det_one_minus_z(c)), mu};
}

template <class P, class R>
KernelZeta<R> zeta_measurement(const SubMarkovKernel<P, R>& k, const SubMarkovKernel<P, R>& kp, int order = kDefaultOrder,
                               const Rational& mu = 1) {
    return kernel_zeta(bullet(k, kp), order, mu);
}

// ⟪κ,κ'⟫⟪κ∷κ',κ''⟫ against ⟪κ'∷κ'',κ⟫⟪κ',κ''⟫
template <class R>
struct KernelCocycleReport {
    bool holds = false;         // as truncated series and rational functions
    bool holds_at_one = false;  // det(I − C) products
    double max_coefficient_gap = 0;
    LogZeta<R> lhs_log, rhs_log;
    RationalFunction<R> lhs, rhs;
};

template <class P, class R>
KernelCocycleReport<R> kernel_cocycle_check(const SubMarkovKernel<P, R>& k, const SubMarkovKernel<P, R>& kp,
                                            const SubMarkovKernel<P, R>& kpp, int order = 12) {
    if (!general_position(k, kp, kpp)) throw PreconditionError("cocycle: kernels are not in general position");
    auto a = zeta_measurement(k, kp, order);
    auto b = zeta_measurement(plug(k, kp), kpp, order);
    auto c = zeta_measurement(plug(kp, kpp), k, order);
    auto d = zeta_measurement(kp, kpp, order);
    KernelCocycleReport<R> r;
    r.lhs_log = a.log + b.log;
    r.rhs_log = c.log + d.log;
    r.lhs = a.base * b.base;
    r.rhs = c.base * d.base;
    r.max_coefficient_gap = max_gap(series_exp(r.lhs_log), series_exp(r.rhs_log));
    r.holds = r.lhs_log == r.rhs_log && r.lhs == r.rhs;
    // base = num/den, so compare den_a den_b num_c num_d against den_c den_d num_a num_b
    const R one = scalar_traits<R>::one();
    const R l1 = a.base.den()(one) * b.base.den()(one) * c.base.num()(one) * d.base.num()(one);
    const R r1 = c.base.den()(one) * d.base.den()(one) * a.base.num()(one) * b.base.num()(one);
    if constexpr (scalar_traits<R>::exact) r.holds_at_one = l1 == r1;
    else r.holds_at_one = std::abs(l1 - r1) <= 1e-9 * (1 + std::abs(l1));
    return r;
}

}  // namespace ig
