#pragma once

#include "ig/errors.hpp"
#include "ig/kernel.hpp"
#include "ig/linalg.hpp"
#include "ig/scalar.hpp"
#include "ig/series.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ig {

using State = std::uint64_t;

// Cantor pairing φ(a,b) = (a+b)(a+b+1)/2 + b
inline State cantor_pair(State a, State b) {
    unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
    if (s > UINT64_MAX) throw PreconditionError("state pairing overflows 64 bits");
    unsigned __int128 v = s * (s + 1) / 2 + b;
    if (v > static_cast<unsigned __int128>(UINT64_MAX)) throw PreconditionError("state pairing overflows 64 bits");
    return static_cast<State>(v);
}

inline std::pair<State, State> cantor_unpair(State n) {
    auto tri = [](unsigned __int128 w) { return w * (w + 1) / 2; };
    auto w = static_cast<unsigned __int128>((std::sqrt(8.0L * static_cast<long double>(n) + 1) - 1) / 2);
    while (tri(w) > n) --w;
    while (tri(w + 1) <= n) ++w;
    State b = static_cast<State>(n - tri(w));
    State a = static_cast<State>(w - b);
    return {a, b};
}

// a location: base point plus the states absorbed by exponentials
struct Site {
    std::string name;
    std::vector<State> tags;

    auto operator<=>(const Site&) const = default;
    bool operator==(const Site&) const = default;

    Site with(std::initializer_list<State> extra) const {
        Site s = *this;
        s.tags.insert(s.tags.end(), extra.begin(), extra.end());
        return s;
    }
    std::string str() const {
        std::string out = name;
        if (!tags.empty()) {
            out += "[";
            for (std::size_t i = 0; i < tags.size(); ++i) out += (i ? "," : "") + std::to_string(tags[i]);
            out += "]";
        }
        return out;
    }
};

struct LPoint {
    Site site;
    State state = 0;

    auto operator<=>(const LPoint&) const = default;
    bool operator==(const LPoint&) const = default;
    std::string str() const { return site.str() + "@" + std::to_string(state); }
};

using LKernel = SubMarkovKernel<LPoint, Rational>;

// Π r_i^{q_i}; the function part of a proof-object
class PoweredRational {
public:
    using Factor = std::pair<RationalFunction<Rational>, Rational>;

    PoweredRational() = default;
    static PoweredRational constant(const Rational& c) {
        if (c <= 0) throw PreconditionError("function constant must be positive");
        PoweredRational p;
        p.push(RationalFunction<Rational>::constant(c), 1);
        return p;
    }
    static PoweredRational power(const RationalFunction<Rational>& r, const Rational& q) {
        PoweredRational p;
        p.push(r, q);
        return p;
    }

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }

    friend PoweredRational operator*(const PoweredRational& a, const PoweredRational& b) {
        PoweredRational p = a;
        for (const auto& [r, q] : b.f_) p.push(r, q);
        return p;
    }

    // equality of the functions; identical factor lists short-cut the L-th power comparison
    friend bool operator==(const PoweredRational& a, const PoweredRational& b) {
        if (a.f_.size() == b.f_.size()) {
            bool same = true;
            for (std::size_t i = 0; i < a.f_.size() && same; ++i) same = a.f_[i].first == b.f_[i].first && a.f_[i].second == b.f_[i].second;
            if (same) return true;
        }
        mpz_class l = 1;
        for (const auto* p : {&a, &b})
            for (const auto& [r, q] : p->f_) l = lcm(l, mpz_class(q.get_den()));
        auto side = [&](const PoweredRational& p, Polynomial<Rational>& num, Polynomial<Rational>& den) {
            num = den = Polynomial<Rational>::one();
            for (const auto& [r, q] : p.f_) {
                mpz_class e = mpz_class(q.get_num()) * (l / mpz_class(q.get_den()));
                const auto& up = sgn(e) > 0 ? r.num() : r.den();
                const auto& dn = sgn(e) > 0 ? r.den() : r.num();
                for (mpz_class k = abs(e); k > 0; --k) {
                    num = num * up;
                    den = den * dn;
                }
            }
        };
        Polynomial<Rational> n1, d1, n2, d2;
        side(a, n1, d1);
        side(b, n2, d2);
        return n1 * d2 == n2 * d1;
    }

    // value at z0; nullopt at a pole or zero of some factor where the product is not finite and nonzero
    std::optional<std::vector<std::pair<Rational, Rational>>> values_at(const Rational& z0) const {
        std::vector<std::pair<Rational, Rational>> out;
        for (const auto& [r, q] : f_) {
            Rational d = r.den()(z0), n = r.num()(z0);
            if (sgn(d) == 0 || sgn(n) == 0) return std::nullopt;
            out.emplace_back(n / d, q);
        }
        return out;
    }

    // log of the normalised factors r_i/r_i(0), as a series
    LogZeta<Rational> log_series(int order) const {
        LogZeta<Rational> l(order);
        for (const auto& [r, q] : f_) {
            Rational c = r.num().coeff(0) / r.den().coeff(0);
            auto s = rational_to_series(r, order).scaled(1 / c);
            l = l + series_log(s).scaled(q);
        }
        return l;
    }
    double log_constant() const {
        double c = 0;
        for (const auto& [r, q] : f_) c += q.get_d() * std::log(Rational(r.num().coeff(0) / r.den().coeff(0)).get_d());
        return c;
    }

    std::string str() const {
        if (f_.empty()) return "1";
        std::string out;
        for (const auto& [r, q] : f_) {
            if (!out.empty()) out += " * ";
            out += "(" + r.str() + ")";
            if (q != 1) out += "^(" + q.get_str() + ")";
        }
        return out;
    }

private:
    void push(const RationalFunction<Rational>& r, const Rational& q) {
        if (sgn(q) == 0 || r == RationalFunction<Rational>()) return;
        for (auto it = f_.begin(); it != f_.end(); ++it)
            if (it->first == r) {
                it->second += q;
                if (sgn(it->second) == 0) f_.erase(it);
                return;
            }
        f_.emplace_back(r, q);
    }

    std::vector<Factor> f_;
};

// (function, stateful kernel); states carry uniform probability mass
class ProofObject {
public:
    using Entry = std::tuple<Site, State, Site, State, Rational>;

    ProofObject() = default;
    ProofObject(std::set<Site> source, std::set<Site> target, std::set<State> states, const std::vector<Entry>& entries,
                PoweredRational fn = {})
        : source_(std::move(source)), target_(std::move(target)), states_(std::move(states)), fn_(std::move(fn)) {
        if (states_.empty() && !(source_.empty() && target_.empty())) throw PreconditionError("proof-object needs at least one state");
        LKernel::Rows rows;
        for (const auto& [p, s, q, t, w] : entries) {
            if (!states_.count(s) || !states_.count(t)) throw PreconditionError("entry uses an undeclared state");
            auto& slot = rows[{p, s}][{q, t}];
            slot += w;
        }
        kernel_ = LKernel(lift(source_), lift(target_), std::move(rows));
    }
    ProofObject(LKernel k, std::set<State> states, PoweredRational fn) : states_(std::move(states)), kernel_(std::move(k)), fn_(std::move(fn)) {
        for (const auto& p : kernel_.source()) source_.insert(p.site);
        for (const auto& p : kernel_.target()) target_.insert(p.site);
        if (kernel_.source() != lift(source_) || kernel_.target() != lift(target_))
            throw PreconditionError("kernel spaces are not site x stateset products");
    }

    const std::set<Site>& source() const { return source_; }
    const std::set<Site>& target() const { return target_; }
    const std::set<State>& states() const { return states_; }
    const LKernel& kernel() const { return kernel_; }
    const PoweredRational& fn() const { return fn_; }
    bool balanced() const { return fn_.is_one(); }

    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        for (const auto& [p, row] : kernel_.rows())
            for (const auto& [q, w] : row) out.emplace_back(p.site, p.state, q.site, q.state, w);
        return out;
    }

private:
    std::set<LPoint> lift(const std::set<Site>& sites) const {
        std::set<LPoint> out;
        for (const auto& s : sites)
            for (auto st : states_) out.insert({s, st});
        return out;
    }

    std::set<Site> source_, target_;
    std::set<State> states_;
    LKernel kernel_;
    PoweredRational fn_;
};

inline std::set<State> paired_states(const std::set<State>& a, const std::set<State>& b) {
    std::set<State> out;
    for (auto x : a)
        for (auto y : b) out.insert(cantor_pair(x, y));
    return out;
}

namespace detail {

// κ on own states, identity on the other's; own state sits at `own_first ? first : second` pairing slot
inline LKernel extend_states(const ProofObject& a, const std::set<State>& other, bool own_first) {
    auto pack = [&](State own, State o) { return own_first ? cantor_pair(own, o) : cantor_pair(o, own); };
    auto states = own_first ? paired_states(a.states(), other) : paired_states(other, a.states());
    auto lift = [&](const std::set<Site>& sites) {
        std::set<LPoint> out;
        for (const auto& s : sites)
            for (auto st : states) out.insert({s, st});
        return out;
    };
    LKernel::Rows rows;
    for (const auto& [p, row] : a.kernel().rows())
        for (const auto& [q, w] : row)
            for (auto o : other) rows[{p.site, pack(p.state, o)}][{q.site, pack(q.state, o)}] = w;
    return LKernel(lift(a.source()), lift(a.target()), std::move(rows));
}

}  // namespace detail

// (κ)†: acts on the first state component
inline ProofObject dagger(const ProofObject& a, const std::set<State>& other) {
    return ProofObject(detail::extend_states(a, other, true), paired_states(a.states(), other), a.fn());
}

// (κ)‡: acts on the second state component
inline ProofObject ddagger(const ProofObject& b, const std::set<State>& other) {
    return ProofObject(detail::extend_states(b, other, false), paired_states(other, b.states()), b.fn());
}

// f·g·⟪κ_a†, κ_b‡⟫, each state pair weighing 1/(|S_a||S_b|)
inline PoweredRational po_zeta_measurement(const ProofObject& a, const ProofObject& b) {
    auto ka = dagger(a, b.states()).kernel();
    auto kb = ddagger(b, a.states()).kernel();
    const std::size_t n = a.states().size() * b.states().size();
    auto z = kernel_zeta(bullet(ka, kb), 1, n ? Rational(1, n) : Rational(1));
    return a.fn() * b.fn() * PoweredRational::power(z.base, z.mu);
}

inline ProofObject po_plug(const ProofObject& a, const ProofObject& b) {
    if (a.source().empty() && a.target().empty()) return b;
    if (b.source().empty() && b.target().empty()) return a;
    auto ka = dagger(a, b.states()).kernel();
    auto kb = ddagger(b, a.states()).kernel();
    auto fn = po_zeta_measurement(a, b);
    return ProofObject(plug(ka, kb), paired_states(a.states(), b.states()), fn);
}

// !a: the old state moves into the site, `fresh` becomes the stateset and is carried unchanged
inline ProofObject bang(const ProofObject& a, const std::set<State>& fresh = {0}) {
    if (!a.balanced()) throw PreconditionError("the exponential needs a balanced proof-object");
    std::set<Site> src, tgt;
    for (const auto& s : a.source())
        for (auto e : a.states()) src.insert(s.with({e}));
    for (const auto& s : a.target())
        for (auto e : a.states()) tgt.insert(s.with({e}));
    std::vector<ProofObject::Entry> entries;
    for (const auto& [p, e, q, e2, w] : a.entries())
        for (auto r : fresh) entries.emplace_back(p.with({e}), r, q.with({e2}), r, w);
    return ProofObject(std::move(src), std::move(tgt), fresh, entries);
}

// entrywise equality after relabeling the states of `a` through iso
inline bool iso_equal(const ProofObject& a, const ProofObject& b, const std::function<std::optional<State>(State)>& iso) {
    if (a.source() != b.source() || a.target() != b.target()) return false;
    if (!(a.fn() == b.fn())) return false;
    std::map<State, State> seen, back;
    auto map = [&](State s) -> std::optional<State> {
        auto it = seen.find(s);
        if (it != seen.end()) return it->second;
        auto t = iso(s);
        if (!t) return std::nullopt;
        auto [jt, fresh] = back.emplace(*t, s);
        if (!fresh && jt->second != s) throw PreconditionError("iso is not injective on occurring states");
        seen.emplace(s, *t);
        return t;
    };
    if (a.kernel().entry_count() != b.kernel().entry_count()) return false;
    for (const auto& [p, row] : a.kernel().rows())
        for (const auto& [q, w] : row) {
            auto s = map(p.state), t = map(q.state);
            if (!s || !t) return false;
            if (!(b.kernel()(LPoint{p.site, *s}, LPoint{q.site, *t}) == w)) return false;
        }
    return true;
}

// !A ⊸ A for A of support X → Y. Sa: states of A's objects (absorbed as tags), r: passenger range
inline ProofObject dereliction_object(const std::set<Site>& x, const std::set<Site>& y, const std::set<State>& sa,
                                      const std::set<State>& r) {
    std::set<Site> src, tgt;
    std::vector<ProofObject::Entry> entries;
    for (const auto& s : x) {
        src.insert(s);
        for (auto f : sa) {
            tgt.insert(s.with({f}));
            for (auto f2 : r) entries.emplace_back(s, cantor_pair(f, f2), s.with({f}), f2, Rational(1));
        }
    }
    for (const auto& s : y) {
        tgt.insert(s);
        for (auto g : sa) {
            src.insert(s.with({g}));
            for (auto f2 : r) entries.emplace_back(s.with({g}), f2, s, cantor_pair(g, f2), Rational(1));
        }
    }
    auto states = r;
    auto pairs = paired_states(sa, r);
    states.insert(pairs.begin(), pairs.end());
    return ProofObject(std::move(src), std::move(tgt), std::move(states), entries);
}

// !A ⊸ !!A. r1: fresh states of the inner exponential, r2: passenger range
inline ProofObject digging_object(const std::set<Site>& x, const std::set<Site>& y, const std::set<State>& sa,
                                  const std::set<State>& r1, const std::set<State>& r2) {
    std::set<Site> src, tgt;
    std::vector<ProofObject::Entry> entries;
    for (const auto& s : x)
        for (auto e : sa) {
            tgt.insert(s.with({e}));
            for (auto e1 : r1) {
                src.insert(s.with({e, e1}));
                for (auto e2 : r2) entries.emplace_back(s.with({e, e1}), e2, s.with({e}), cantor_pair(e1, e2), Rational(1));
            }
        }
    for (const auto& s : y)
        for (auto g : sa) {
            src.insert(s.with({g}));
            for (auto f1 : r1) {
                tgt.insert(s.with({g, f1}));
                for (auto f2 : r2) entries.emplace_back(s.with({g}), cantor_pair(f1, f2), s.with({g, f1}), f2, Rational(1));
            }
        }
    auto states = r2;
    auto pairs = paired_states(r1, r2);
    states.insert(pairs.begin(), pairs.end());
    return ProofObject(std::move(src), std::move(tgt), std::move(states), entries);
}

// promotion staging for a : W → X and f : X → Y
inline Site left_copy(const Site& s) { return {s.name + "#l", s.tags}; }
inline Site right_copy(const Site& s) { return {s.name + "#r", s.tags}; }

inline ProofObject promotion_left(const std::set<Site>& w, const std::set<Site>& x, const std::set<State>& sa,
                                  const std::set<State>& sf, const std::set<State>& sigma) {
    std::set<Site> src, tgt;
    std::vector<ProofObject::Entry> entries;
    for (const auto& s : w)
        for (auto e : sa) {
            tgt.insert(s.with({e}));
            for (auto g : sf) {
                src.insert(s.with({e, g}));
                for (auto o : sigma) entries.emplace_back(s.with({e, g}), o, s.with({e}), cantor_pair(g, o), Rational(1));
            }
        }
    for (const auto& s : x)
        for (auto e : sa) {
            src.insert(s.with({e}));
            for (auto g : sf) {
                tgt.insert(left_copy(s).with({e, g}));
                for (auto o : sigma) entries.emplace_back(s.with({e}), cantor_pair(g, o), left_copy(s).with({e, g}), o, Rational(1));
            }
        }
    auto states = sigma;
    auto pairs = paired_states(sf, sigma);
    states.insert(pairs.begin(), pairs.end());
    return ProofObject(std::move(src), std::move(tgt), std::move(states), entries);
}

inline ProofObject promotion_right(const std::set<Site>& x, const std::set<Site>& y, const std::set<State>& sa,
                                   const std::set<State>& sf, const std::set<State>& tau) {
    std::set<Site> src, tgt;
    std::vector<ProofObject::Entry> entries;
    for (const auto& s : x)
        for (auto g : sf) {
            tgt.insert(s.with({g}));
            for (auto e : sa) {
                src.insert(right_copy(s).with({e, g}));
                for (auto o : tau) entries.emplace_back(right_copy(s).with({e, g}), o, s.with({g}), cantor_pair(e, o), Rational(1));
            }
        }
    for (const auto& s : y)
        for (auto g : sf) {
            src.insert(s.with({g}));
            for (auto e : sa) {
                tgt.insert(s.with({e, g}));
                for (auto o : tau) entries.emplace_back(s.with({g}), cantor_pair(e, o), s.with({e, g}), o, Rational(1));
            }
        }
    auto states = tau;
    auto pairs = paired_states(sa, tau);
    states.insert(pairs.begin(), pairs.end());
    return ProofObject(std::move(src), std::move(tgt), std::move(states), entries);
}

inline ProofObject promotion_twist(const std::set<Site>& x, const std::set<State>& sa, const std::set<State>& sf) {
    std::set<Site> src, tgt;
    std::vector<ProofObject::Entry> entries;
    for (const auto& s : x)
        for (auto e : sa)
            for (auto g : sf) {
                src.insert(left_copy(s).with({e, g}));
                tgt.insert(right_copy(s).with({e, g}));
                entries.emplace_back(left_copy(s).with({e, g}), 0, right_copy(s).with({e, g}), 0, Rational(1));
            }
    return ProofObject(std::move(src), std::move(tgt), {0}, entries);
}

inline ProofObject promotion_contract(const std::set<Site>& w, const std::set<Site>& y, const std::set<State>& sa,
                                      const std::set<State>& sf) {
    std::set<Site> src, tgt;
    std::vector<ProofObject::Entry> entries;
    for (auto e : sa)
        for (auto g : sf) {
            for (const auto& s : w) {
                src.insert(s.with({cantor_pair(e, g)}));
                tgt.insert(s.with({e, g}));
                entries.emplace_back(s.with({cantor_pair(e, g)}), 0, s.with({e, g}), 0, Rational(1));
            }
            for (const auto& s : y) {
                src.insert(s.with({e, g}));
                tgt.insert(s.with({cantor_pair(e, g)}));
                entries.emplace_back(s.with({e, g}), 0, s.with({cantor_pair(e, g)}), 0, Rational(1));
            }
        }
    return ProofObject(std::move(src), std::move(tgt), {0}, entries);
}

// ((!a ∷ κ_l) ∷ κ_twist ∷ (!f ∷ κ_r)) ∷ κ_c
inline ProofObject promotion_pipeline(const ProofObject& f, const ProofObject& a, const std::set<State>& sigma = {0},
                                      const std::set<State>& tau = {0}) {
    if (!a.balanced() || !f.balanced()) throw PreconditionError("promotion needs balanced proof-objects");
    if (a.target() != f.source()) throw PreconditionError("promotion staging: the argument must land on the function's source");
    if (!pset_intersection(a.source(), f.target()).empty() || !pset_intersection(a.source(), a.target()).empty() ||
        !pset_intersection(f.source(), f.target()).empty())
        throw PreconditionError("promotion staging: W, X and Y must be disjoint");
    const auto &w = a.source(), &x = a.target(), &y = f.target();
    auto left = po_plug(bang(a), promotion_left(w, x, a.states(), f.states(), sigma));
    auto right = po_plug(bang(f), promotion_right(x, y, a.states(), f.states(), tau));
    auto mid = po_plug(po_plug(left, promotion_twist(x, a.states(), f.states())), right);
    return po_plug(mid, promotion_contract(w, y, a.states(), f.states()));
}

// passenger states left by the pipeline: φ(φ(φ(φ(0,σ),0), φ(0,τ)), 0)
inline std::set<State> promotion_passengers(const std::set<State>& sigma = {0}, const std::set<State>& tau = {0}) {
    std::set<State> out;
    for (auto s : sigma)
        for (auto t : tau) out.insert(cantor_pair(cantor_pair(cantor_pair(cantor_pair(0, s), 0), cantor_pair(0, t)), 0));
    return out;
}

// antipodes
struct Antipode {
    enum class Kind { AtOneNotZeroOne, NonVanishing } kind = Kind::AtOneNotZeroOne;
    double radius = 1.0;  // NonVanishing: closed disk |z| <= radius

    static Antipode at_one() { return {}; }
    static Antipode non_vanishing(double r) { return {Kind::NonVanishing, r}; }
    std::string str() const { return kind == Kind::AtOneNotZeroOne ? "at-one" : "nonvanishing " + double_str(radius); }
};

namespace detail {

// Π v_i^{q_i} == 1 for positive rationals v_i, decided on L-th powers
inline bool product_is_one(const std::vector<std::pair<Rational, Rational>>& vals) {
    mpz_class l = 1;
    for (const auto& [v, q] : vals) l = lcm(l, mpz_class(q.get_den()));
    Rational num = 1, den = 1;
    for (const auto& [v, q] : vals) {
        mpz_class e = mpz_class(q.get_num()) * (l / mpz_class(q.get_den()));
        mpq_class p;
        mpz_class k = abs(e);
        mpz_pow_ui(p.get_num_mpz_t(), v.get_num_mpz_t(), k.get_ui());
        mpz_pow_ui(p.get_den_mpz_t(), v.get_den_mpz_t(), k.get_ui());
        p.canonicalize();
        if (sgn(e) > 0) num *= p;
        else den *= p;
    }
    return num == den;
}

}  // namespace detail

inline bool antipode_holds(const PoweredRational& m, const Antipode& p) {
    if (p.kind == Antipode::Kind::AtOneNotZeroOne) {
        auto vals = m.values_at(1);
        if (!vals) return false;  // pole or zero at 1
        for (const auto& [v, q] : *vals)
            if (v <= 0) return false;
        return !detail::product_is_one(*vals);
    }
    // order of vanishing at every root inside the disk, clustered with tolerance
    std::vector<std::pair<Complex, double>> roots;
    auto add = [&](const Polynomial<Rational>& poly, double weight) {
        for (auto z : poly_roots(to_complex_coeffs(poly))) {
            if (std::abs(z) > p.radius + 1e-9) continue;
            bool merged = false;
            for (auto& [c, o] : roots)
                if (std::abs(c - z) < 1e-6) {
                    o += weight;
                    merged = true;
                    break;
                }
            if (!merged) roots.emplace_back(z, weight);
        }
    };
    for (const auto& [r, q] : m.factors()) {
        add(r.num(), q.get_d());
        add(r.den(), -q.get_d());
    }
    for (const auto& [z, o] : roots)
        if (o > 1e-9) return false;
    return true;
}

inline bool orthogonal(const ProofObject& a, const ProofObject& b, const Antipode& p) {
    if (a.source() != b.target() || a.target() != b.source()) throw PreconditionError("orthogonality needs dual supports");
    return antipode_holds(po_zeta_measurement(a, b), p);
}

// generator-presented types: Generated means E^⊥⊥, Orthogonal means E^⊥
struct TypeGen {
    enum class Marker { Generated, Orthogonal };
    std::set<Site> in, out;  // support of members: in → out
    std::vector<ProofObject> generators;
    Marker marker = Marker::Generated;

    TypeGen dual() const {
        return {out, in, generators, marker == Marker::Generated ? Marker::Orthogonal : Marker::Generated};
    }
};

inline void check_type(const TypeGen& t) {
    for (const auto& g : t.generators) {
        const bool ok = t.marker == TypeGen::Marker::Generated ? (g.source() == t.in && g.target() == t.out)
                                                               : (g.source() == t.out && g.target() == t.in);
        if (!ok) throw PreconditionError("type generators do not share the type's support");
    }
}

inline bool member(const ProofObject& x, const TypeGen& t, const Antipode& p) {
    check_type(t);
    if (x.source() != t.in || x.target() != t.out) throw PreconditionError("object does not have the type's support");
    if (t.marker == TypeGen::Marker::Orthogonal) {
        for (const auto& g : t.generators)
            if (!orthogonal(x, g, p)) return false;
        return true;
    }
    // E ⊆ E^⊥⊥; anything else needs a dual presentation
    for (const auto& g : t.generators)
        if (iso_equal(x, g, [](State s) { return std::optional<State>(s); })) return true;
    throw PreconditionError("membership in a biorthogonal closure needs an orthogonal presentation");
}

inline TypeGen tensor_generators(const TypeGen& a, const TypeGen& b) {
    if (!pset_intersection(pset_union(a.in, a.out), pset_union(b.in, b.out)).empty())
        throw PreconditionError("tensor needs types of disjoint supports");
    if (a.marker != TypeGen::Marker::Generated || b.marker != TypeGen::Marker::Generated)
        throw PreconditionError("tensor is formed from generated presentations");
    TypeGen t{pset_union(a.in, b.in), pset_union(a.out, b.out), {}, TypeGen::Marker::Generated};
    for (const auto& x : a.generators)
        for (const auto& y : b.generators) t.generators.push_back(po_plug(x, y));
    return t;
}

// f ∈ A ⊸ B: f∷a ∈ B for every generator a of A
inline bool impl_membership(const ProofObject& f, const TypeGen& a, const TypeGen& b, const Antipode& p) {
    if (b.marker != TypeGen::Marker::Orthogonal) throw PreconditionError("B needs an orthogonal presentation to test membership");
    check_type(a);
    if (f.source() != pset_union(a.out, b.in) || f.target() != pset_union(a.in, b.out))
        throw PreconditionError("object does not have the support of A ⊸ B");
    for (const auto& g : a.generators)
        if (!member(po_plug(f, g), b, p)) return false;
    return true;
}

struct DualityReport {
    std::size_t samples = 0;
    std::size_t members = 0;  // samples found in A ⊸ B
    std::vector<std::size_t> disagreements;
};

// (A ⊗ B^⊥)^⊥ against A ⊸ B on the given objects
inline DualityReport duality_check(const TypeGen& a, const TypeGen& b, const std::vector<ProofObject>& samples, const Antipode& p) {
    auto lhs = tensor_generators(a, b.dual()).dual();
    DualityReport r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        bool x = member(samples[i], lhs, p);
        bool y = impl_membership(samples[i], a, b, p);
        ++r.samples;
        if (y) ++r.members;
        if (x != y) r.disagreements.push_back(i);
    }
    return r;
}

}  // namespace ig
