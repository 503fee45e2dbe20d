#pragma once

#include "ig/errors.hpp"
#include "ig/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ig {

inline constexpr int kDefaultOrder = 16;

template <class S>
class Polynomial {
public:
    using T = scalar_traits<S>;

    Polynomial() = default;
    explicit Polynomial(std::vector<S> c) : c_(std::move(c)) { trim(); }
    static Polynomial constant(S v) { return Polynomial(std::vector<S>{std::move(v)}); }
    static Polynomial one() { return constant(T::one()); }
    // 1 - w z^k
    static Polynomial one_minus(const S& w, std::size_t k) {
        std::vector<S> c(k + 1, T::zero());
        c[0] = T::one();
        c[k] = c[k] - w;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T::zero(); }
    const S& lead() const { return c_.back(); }

    S operator()(const S& z) const {
        S acc = T::zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), T::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), T::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, T::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (ig::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    Polynomial scaled(const S& s) const {
        std::vector<S> c = c_;
        for (auto& x : c) x = x * s;
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if constexpr (T::exact) {
            return a.c_ == b.c_;
        } else {
            std::size_t n = std::max(a.c_.size(), b.c_.size());
            for (std::size_t i = 0; i < n; ++i)
                if (!T::near(a.coeff(i), b.coeff(i), 1e-9)) return false;
            return true;
        }
    }

    // quotient and remainder; divisor must be nonzero
    static std::pair<Polynomial, Polynomial> divmod(Polynomial a, const Polynomial& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {Polynomial{}, std::move(a)};
        std::vector<S> q(a.degree() - b.degree() + 1, T::zero());
        std::vector<S> r = a.c_;
        for (int i = a.degree() - b.degree(); i >= 0; --i) {
            S f = r[i + b.degree()] / b.lead();
            q[i] = f;
            for (int j = 0; j <= b.degree(); ++j) r[i + j] = r[i + j] - f * b.c_[j];
        }
        r.resize(b.degree());
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.scaled(T::one() / a.lead());
    }

    std::string str(const std::string& var = "z") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (ig::is_zero(c_[i])) continue;
            std::string coef = to_str(c_[i]);
            if (!out.empty()) out += " + ";
            if (i == 0) {
                out += coef;
                continue;
            }
            if (coef != "1") out += "(" + coef + ")*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && ig::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

template <class S>
class TruncatedSeries {
public:
    using T = scalar_traits<S>;

    explicit TruncatedSeries(int order = kDefaultOrder) : c_(check(order) + 1, T::zero()) {}
    TruncatedSeries(std::vector<S> c, int order) : c_(check(order) + 1, T::zero()) {
        for (std::size_t i = 0; i < c.size() && i < c_.size(); ++i) c_[i] = std::move(c[i]);
    }
    static TruncatedSeries one(int order) {
        TruncatedSeries s(order);
        s.c_[0] = T::one();
        return s;
    }
    static TruncatedSeries from_polynomial(const Polynomial<S>& p, int order) {
        return TruncatedSeries(p.coeffs(), order);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<S>& coeffs() const { return c_; }
    const S& operator[](std::size_t i) const { return c_.at(i); }
    S& operator[](std::size_t i) { return c_.at(i); }

    TruncatedSeries truncated(int order) const { return TruncatedSeries(c_, std::min(order, this->order())); }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        const int K = r.order();
        for (int i = 0; i <= K; ++i) {
            if (ig::is_zero(a.c_[i])) continue;
            for (int j = 0; i + j <= K; ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        return r;
    }
    TruncatedSeries scaled(const S& s) const {
        TruncatedSeries r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }
    // exact comparison on the common truncation
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        int K = std::min(a.order(), b.order());
        for (int i = 0; i <= K; ++i)
            if (!T::near(a.c_[i], b.c_[i], 1e-9)) return false;
        return true;
    }

    // largest |a_i - b_i| on the common truncation
    friend double max_gap(const TruncatedSeries& a, const TruncatedSeries& b) {
        int K = std::min(a.order(), b.order());
        double g = 0;
        for (int i = 0; i <= K; ++i) g = std::max(g, T::abs(a.c_[i] - b.c_[i]));
        return g;
    }

    S eval(const S& z) const {
        S acc = T::zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

private:
    static int check(int order) {
        if (order < 0) throw PreconditionError("truncation order must be non-negative");
        return order;
    }
    std::vector<S> c_;
};

template <class S>
TruncatedSeries<S> series_add(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    return a + b;
}

template <class S>
TruncatedSeries<S> series_mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    return a * b;
}

// log of a zeta function: a series with vanishing constant term
template <class S>
class LogZeta {
public:
    using T = scalar_traits<S>;

    explicit LogZeta(int order = kDefaultOrder) : s_(order) {}
    explicit LogZeta(TruncatedSeries<S> s) : s_(std::move(s)) {
        if (!ig::is_zero(s_[0])) throw PreconditionError("log series must have zero constant term");
        s_[0] = T::zero();
    }
    const TruncatedSeries<S>& series() const { return s_; }
    int order() const { return s_.order(); }
    const S& operator[](std::size_t i) const { return s_[i]; }
    bool is_zero() const {
        for (const auto& c : s_.coeffs())
            if (!ig::is_zero(c)) return false;
        return true;
    }
    friend LogZeta operator+(const LogZeta& a, const LogZeta& b) { return LogZeta(a.s_ + b.s_); }
    friend LogZeta operator-(const LogZeta& a, const LogZeta& b) { return LogZeta(a.s_ - b.s_); }
    LogZeta scaled(const S& c) const { return LogZeta(s_.scaled(c)); }
    friend bool operator==(const LogZeta& a, const LogZeta& b) { return a.s_ == b.s_; }

private:
    TruncatedSeries<S> s_;
};

template <class S>
TruncatedSeries<S> series_exp(const LogZeta<S>& l) {
    using T = scalar_traits<S>;
    const int K = l.order();
    TruncatedSeries<S> e(K);
    e[0] = T::one();
    // n e_n = sum_{k=1..n} k l_k e_{n-k}
    for (int n = 1; n <= K; ++n) {
        S acc = T::zero();
        for (int k = 1; k <= n; ++k) {
            if (ig::is_zero(l[k])) continue;
            acc = acc + from_int<S>(k) * l[k] * e[n - k];
        }
        e[n] = acc / from_int<S>(n);
    }
    return e;
}

template <class S>
TruncatedSeries<S> series_exp(const TruncatedSeries<S>& l) {
    return series_exp(LogZeta<S>(l));
}

template <class S>
LogZeta<S> series_log(const TruncatedSeries<S>& s) {
    using T = scalar_traits<S>;
    if (!T::near(s[0], T::one(), 1e-12)) throw PreconditionError("series_log needs constant term 1");
    const int K = s.order();
    TruncatedSeries<S> l(K);
    for (int n = 1; n <= K; ++n) {
        S acc = from_int<S>(n) * s[n];
        for (int k = 1; k < n; ++k) {
            if (ig::is_zero(l[k])) continue;
            acc = acc - from_int<S>(k) * l[k] * s[n - k];
        }
        l[n] = acc / from_int<S>(n);
    }
    return LogZeta<S>(std::move(l));
}

template <class S>
class RationalFunction {
public:
    using T = scalar_traits<S>;
    using Poly = Polynomial<S>;

    RationalFunction() : num_(Poly::one()), den_(Poly::one()) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
        canonicalise();
    }
    static RationalFunction constant(const S& c) { return {Poly::constant(c), Poly::one()}; }
    static RationalFunction inverse_of(Poly den) { return {Poly::one(), std::move(den)}; }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.num_.is_zero()) throw std::domain_error("division by the zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    std::string str() const {
        if (den_.degree() == 0 && den_.coeff(0) == T::one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void canonicalise() {
        if constexpr (T::exact) {
            if (num_.is_zero()) {
                den_ = Poly::one();
                return;
            }
            Poly g = Poly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly::divmod(num_, g).first;
                den_ = Poly::divmod(den_, g).first;
            }
        }
        // normalise den(0) = 1 when possible, otherwise a monic denominator
        S lead = !ig::is_zero(den_.coeff(0)) ? den_.coeff(0) : den_.lead();
        if (lead != T::one()) {
            S inv = T::one() / lead;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    Poly num_, den_;
};

template <class S>
TruncatedSeries<S> rational_to_series(const RationalFunction<S>& r, int order) {
    using T = scalar_traits<S>;
    const auto& q = r.den();
    if (ig::is_zero(q.coeff(0))) throw PoleError("denominator vanishes at the origin");
    TruncatedSeries<S> out(order);
    S inv0 = T::one() / q.coeff(0);
    for (int n = 0; n <= order; ++n) {
        S acc = r.num().coeff(n);
        for (int k = 1; k <= n && k <= q.degree(); ++k) acc = acc - q.coeff(k) * out[n - k];
        out[n] = acc * inv0;
    }
    return out;
}

template <class S>
S eval_at(const TruncatedSeries<S>& s, const S& z0) {
    return s.eval(z0);
}

template <class S>
S eval_at(const RationalFunction<S>& r, const S& z0) {
    S d = r.den()(z0);
    if (is_zero(d)) throw PoleError("pole at evaluation point");
    return r.num()(z0) / d;
}

}  // namespace ig
