#pragma once

#include "ig/errors.hpp"
#include "ig/scalar.hpp"
#include "ig/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace ig {

// small dense matrices; row-major
template <class S>
class Matrix {
public:
    using T = scalar_traits<S>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T::zero()) {}
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T::one();
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    S& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw PreconditionError("matrix shape mismatch");
        Matrix out(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const S& v = x(i, k);
                if (ig::is_zero(v)) continue;
                for (std::size_t j = 0; j < y.c_; ++j) out(i, j) = out(i, j) + v * y(k, j);
            }
        return out;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] = x.a_[i] + y.a_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] = x.a_[i] - y.a_[i];
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!T::near(x.a_[i], y.a_[i], 1e-9)) return false;
        return true;
    }

    S trace() const {
        S t = T::zero();
        for (std::size_t i = 0; i < std::min(r_, c_); ++i) t = t + (*this)(i, i);
        return t;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<S> a_;
};

namespace detail {

// pick a pivot in column col among rows [from, n)
template <class S>
std::optional<std::size_t> pick_pivot(const Matrix<S>& m, std::size_t col, std::size_t from) {
    using T = scalar_traits<S>;
    std::optional<std::size_t> best;
    double best_abs = 0;
    for (std::size_t i = from; i < m.rows(); ++i) {
        if (ig::is_zero(m(i, col))) continue;
        if constexpr (T::exact) return i;
        double a = T::abs(m(i, col));
        if (!best || a > best_abs) {
            best = i;
            best_abs = a;
        }
    }
    return best;
}

}  // namespace detail

// characteristic polynomial det(xI - A) via Hessenberg reduction
template <class S>
Polynomial<S> charpoly(Matrix<S> h) {
    using T = scalar_traits<S>;
    const std::size_t n = h.rows();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        auto piv = detail::pick_pivot(h, m - 1, m);
        if (!piv) continue;
        if (*piv != m) {
            h.swap_rows(*piv, m);
            h.swap_cols(*piv, m);
        }
        const S p = h(m, m - 1);
        for (std::size_t i = m + 1; i < n; ++i) {
            if (ig::is_zero(h(i, m - 1))) continue;
            S u = h(i, m - 1) / p;
            for (std::size_t k = 0; k < n; ++k) h(i, k) = h(i, k) - u * h(m, k);
            for (std::size_t k = 0; k < n; ++k) h(k, m) = h(k, m) + u * h(k, i);
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i t_i h_{m-i,m} p_{m-i-1}
    std::vector<Polynomial<S>> p;
    p.reserve(n + 1);
    p.push_back(Polynomial<S>::one());
    const Polynomial<S> x(std::vector<S>{T::zero(), T::one()});
    for (std::size_t m = 1; m <= n; ++m) {
        Polynomial<S> pm = (x - Polynomial<S>::constant(h(m - 1, m - 1))) * p[m - 1];
        S t = T::one();
        for (std::size_t i = 1; i < m; ++i) {
            t = t * h(m - i, m - i - 1);
            if (ig::is_zero(t)) break;
            S coef = t * h(m - i - 1, m - 1);
            if (!ig::is_zero(coef)) pm = pm - p[m - i - 1].scaled(coef);
        }
        p.push_back(std::move(pm));
    }
    return p[n];
}

// det(I - zA) as a polynomial in z
template <class S>
Polynomial<S> det_one_minus_z(const Matrix<S>& a) {
    using T = scalar_traits<S>;
    Polynomial<S> cp = charpoly(a);
    const std::size_t n = a.rows();
    std::vector<S> c(n + 1, T::zero());
    for (std::size_t j = 0; j <= n; ++j) c[j] = cp.coeff(n - j);
    return Polynomial<S>(std::move(c));
}

template <class S>
S determinant(Matrix<S> m) {
    using T = scalar_traits<S>;
    const std::size_t n = m.rows();
    S det = T::one();
    for (std::size_t c = 0; c < n; ++c) {
        auto piv = detail::pick_pivot(m, c, c);
        if (!piv) return T::zero();
        if (*piv != c) {
            m.swap_rows(*piv, c);
            det = T::zero() - det;
        }
        det = det * m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (ig::is_zero(m(i, c))) continue;
            S u = m(i, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(i, k) = m(i, k) - u * m(c, k);
        }
    }
    return det;
}

// solve A X = B; nullopt when A is singular
template <class S>
std::optional<Matrix<S>> solve(Matrix<S> a, Matrix<S> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw PreconditionError("solve: shape mismatch");
    for (std::size_t c = 0; c < n; ++c) {
        auto piv = detail::pick_pivot(a, c, c);
        if (!piv) return std::nullopt;
        if (*piv != c) {
            a.swap_rows(*piv, c);
            b.swap_rows(*piv, c);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || ig::is_zero(a(i, c))) continue;
            S u = a(i, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) a(i, k) = a(i, k) - u * a(c, k);
            for (std::size_t k = 0; k < b.cols(); ++k) b(i, k) = b(i, k) - u * b(c, k);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        S inv = scalar_traits<S>::one() / a(i, i);
        for (std::size_t k = 0; k < b.cols(); ++k) b(i, k) = b(i, k) * inv;
    }
    return b;
}

// [tr(A), tr(A^2), ..., tr(A^n_max)]
template <class S>
std::vector<S> power_traces(const Matrix<S>& a, int n_max) {
    std::vector<S> out;
    Matrix<S> p = a;
    for (int n = 1; n <= n_max; ++n) {
        out.push_back(p.trace());
        if (n < n_max) p = p * a;
    }
    return out;
}

// all complex roots (Durand-Kerner); fine for the small degrees seen here
inline std::vector<Complex> poly_roots(std::vector<Complex> c) {
    while (!c.empty() && std::abs(c.back()) == 0) c.pop_back();
    if (c.size() <= 1) return {};
    // exact roots at 0 stay exact
    std::size_t zeros = 0;
    while (std::abs(c[zeros]) == 0) ++zeros;
    if (zeros) {
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
        auto rest = poly_roots(std::move(c));
        rest.insert(rest.end(), zeros, Complex(0));
        return rest;
    }
    const std::size_t n = c.size() - 1;
    Complex lead = c.back();
    for (auto& x : c) x /= lead;
    std::vector<Complex> z(n);
    Complex seed(0.4, 0.9);
    double radius = 1;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]) + 1);
    for (std::size_t i = 0; i < n; ++i) z[i] = radius * std::pow(seed, static_cast<double>(i)) / std::abs(std::pow(seed, static_cast<double>(i)));
    auto eval = [&](Complex x) {
        Complex acc = 0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    };
    for (int it = 0; it < 2000; ++it) {
        double delta = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0) den = 1e-14;
            Complex step = eval(z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-15) break;
    }
    return z;
}

template <class S>
std::vector<Complex> to_complex_coeffs(const Polynomial<S>& p) {
    std::vector<Complex> out;
    for (const auto& x : p.coeffs()) out.push_back(scalar_traits<S>::to_complex(x));
    return out;
}

template <class S>
double spectral_radius(const Matrix<S>& a) {
    double r = 0;
    for (auto z : poly_roots(to_complex_coeffs(charpoly(a)))) r = std::max(r, std::abs(z));
    return r;
}

}  // namespace ig
