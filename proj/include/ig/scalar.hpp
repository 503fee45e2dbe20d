#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

namespace ig {

using Rational = mpq_class;

// mpq_class(p, q) leaves the fraction unreduced
inline Rational ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}
using Complex = std::complex<double>;

// Gaussian rationals, Q(i)
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long v) : re_(v) {}  // NOLINT
    GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        if (is_real() && o.is_real()) {
            re_ /= o.re_;
            return *this;
        }
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    GaussRational operator-() const { return GaussRational(-re_, -im_); }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    GaussRational conj() const { return GaussRational(re_, -im_); }
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

inline std::string double_str(double d) {
    if (d == 0) return "0";  // normalises -0
    std::ostringstream os;
    os.precision(17);
    os << d;
    return os.str();
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<GaussRational> {
    static constexpr bool exact = true;
    static constexpr bool complex = true;
    static GaussRational zero() { return {}; }
    static GaussRational one() { return GaussRational(1); }
    static bool is_zero(const GaussRational& s, double = 0) { return s.is_zero(); }
    static bool near(const GaussRational& a, const GaussRational& b, double = 0) { return a == b; }
    static Complex to_complex(const GaussRational& s) { return s.to_complex(); }
    static GaussRational from_gauss(const GaussRational& g) { return g; }
    static double abs(const GaussRational& s) { return std::abs(s.to_complex()); }
    static std::string str(const GaussRational& s) {
        if (s.is_real()) return rational_str(s.re());
        std::string out;
        if (sgn(s.re()) != 0) out = rational_str(s.re());
        if (sgn(s.im()) >= 0 && !out.empty()) out += "+";
        if (s.im() == -1) out += "-";
        else if (s.im() != 1) out += rational_str(s.im());
        return out + "i";
    }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static constexpr bool complex = true;
    static Complex zero() { return {}; }
    static Complex one() { return {1.0, 0.0}; }
    static bool is_zero(const Complex& s, double tol = 0) { return std::abs(s) <= tol; }
    static bool near(const Complex& a, const Complex& b, double tol) { return std::abs(a - b) <= tol; }
    static Complex to_complex(const Complex& s) { return s; }
    static Complex from_gauss(const GaussRational& g) { return g.to_complex(); }
    static double abs(const Complex& s) { return std::abs(s); }
    static std::string str(const Complex& s) {
        if (s.imag() == 0) return double_str(s.real());
        std::string out = double_str(s.real());
        if (s.imag() >= 0) out += "+";
        return out + double_str(s.imag()) + "i";
    }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr bool complex = false;
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static bool is_zero(const Rational& s, double = 0) { return sgn(s) == 0; }
    static bool near(const Rational& a, const Rational& b, double = 0) { return a == b; }
    static Complex to_complex(const Rational& s) { return {s.get_d(), 0.0}; }
    static Rational from_gauss(const GaussRational& g) {
        if (!g.is_real()) throw std::domain_error("complex weight where a real one is required");
        return g.re();
    }
    static double abs(const Rational& s) { return std::abs(s.get_d()); }
    static std::string str(const Rational& s) { return rational_str(s); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr bool complex = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double s, double tol = 0) { return std::abs(s) <= tol; }
    static bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
    static Complex to_complex(double s) { return {s, 0.0}; }
    static double from_gauss(const GaussRational& g) {
        if (!g.is_real()) throw std::domain_error("complex weight where a real one is required");
        return g.re().get_d();
    }
    static double abs(double s) { return std::abs(s); }
    static std::string str(double s) { return double_str(s); }
};

// tolerance used by the float backends when deciding "is this zero"
inline constexpr double kFloatTol = 1e-12;

template <class S>
bool is_zero(const S& s) {
    return scalar_traits<S>::is_zero(s, scalar_traits<S>::exact ? 0.0 : kFloatTol);
}

template <class S>
std::string to_str(const S& s) {
    return scalar_traits<S>::str(s);
}

template <class S>
S from_int(long v) {
    return scalar_traits<S>::from_gauss(GaussRational(v));
}

template <class S>
S from_rational(const Rational& q) {
    return scalar_traits<S>::from_gauss(GaussRational(q));
}

}  // namespace ig
