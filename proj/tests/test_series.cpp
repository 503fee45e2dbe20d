#include "ig/random.hpp"
#include "ig/series.hpp"

#include <gtest/gtest.h>

using namespace ig;

namespace {

using Q = Rational;
using P = Polynomial<Q>;
using TS = TruncatedSeries<Q>;

TS series(std::vector<Q> c, int k) { return TS(std::move(c), k); }

TS geometric(int k, int step = 1) {
    TS s(k);
    for (int n = 0; n <= k; n += step) s[static_cast<std::size_t>(n)] = 1;
    return s;
}

TS random_series(sample::Rng& rng, int k, bool zero_constant) {
    TS s(k);
    for (int n = zero_constant ? 1 : 0; n <= k; ++n) s[static_cast<std::size_t>(n)] = ratio(sample::uniform(rng, -9, 9), sample::uniform(rng, 1, 6));
    return s;
}

}  // namespace

TEST(SeriesMul, DifferenceOfSquares) {
    EXPECT_EQ(series({1, 1}, 4) * series({1, -1}, 4), series({1, 0, -1}, 4));
}

TEST(SeriesAdd, ZeroIsIdentity) {
    auto s = series({3, Q(1, 2), -2}, 5);
    EXPECT_EQ(series_add(TS(5), s), s);
}

TEST(SeriesMul, GeometricTimesOneMinusZ) {
    // direct convolution: c_n = 1 - 1 for n >= 1
    EXPECT_EQ(series_mul(geometric(6), series({1, -1}, 6)), TS::one(6));
}

TEST(SeriesMul, TruncatesAtOrder) {
    auto s = series({0, 0, 1}, 3) * series({0, 0, 1}, 3);
    EXPECT_EQ(s, TS(3));
}

TEST(SeriesExp, ExpOfZeroIsOne) { EXPECT_EQ(series_exp(LogZeta<Q>(7)), TS::one(7)); }

TEST(SeriesExp, MinusLogOneMinusZ) {
    TS l(5);
    for (int n = 1; n <= 5; ++n) l[static_cast<std::size_t>(n)] = Q(1, n);
    EXPECT_EQ(series_exp(LogZeta<Q>(l)), geometric(5));
}

TEST(SeriesExp, MinusLogOneMinusZSquared) {
    TS l(4);
    l[2] = 1;
    l[4] = Q(1, 2);
    EXPECT_EQ(series_exp(LogZeta<Q>(l)), geometric(4, 2));
}

TEST(SeriesExp, RejectsNonzeroConstant) {
    EXPECT_THROW(LogZeta<Q>(series({1, 1}, 3)), PreconditionError);
    EXPECT_THROW(series_log(series({2, 1}, 3)), PreconditionError);
}

TEST(RationalToSeries, Geometric) {
    EXPECT_EQ(rational_to_series(RationalFunction<Q>::inverse_of(P({1, -1})), 3), geometric(3));
}

TEST(RationalToSeries, GeometricInZSquared) {
    EXPECT_EQ(rational_to_series(RationalFunction<Q>::inverse_of(P({1, 0, -1})), 4), geometric(4, 2));
}

TEST(RationalToSeries, CancelledQuotientIsOne) {
    EXPECT_EQ(rational_to_series(RationalFunction<Q>(P({1, -1}), P({1, -1})), 2), TS::one(2));
}

TEST(RationalToSeries, PoleAtOrigin) {
    EXPECT_THROW(rational_to_series(RationalFunction<Q>::inverse_of(P({0, 1})), 3), PoleError);
}

TEST(EvalAt, HalfLoopAtOne) {
    EXPECT_EQ(eval_at(RationalFunction<Q>::inverse_of(P({1, Q(-1, 2)})), Q(1)), Q(2));
}

TEST(EvalAt, SeriesAtZeroIsConstantTerm) {
    auto s = series({Q(5, 3), 7, -1}, 4);
    EXPECT_EQ(eval_at(s, Q(0)), Q(5, 3));
}

TEST(EvalAt, PoleAtOne) {
    EXPECT_THROW(eval_at(RationalFunction<Q>::inverse_of(P({1, -1})), Q(1)), PoleError);
}

TEST(SeriesProperty, ExpLogRoundTrip) {
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = sample::case_rng(11, i);
        LogZeta<Q> l(random_series(rng, 10, true));
        EXPECT_EQ(series_log(series_exp(l)), l) << "case " << i;
    }
}

TEST(SeriesProperty, RationalTimesDenominator) {
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = sample::case_rng(12, i);
        auto num = random_series(rng, 3, false);
        auto den = random_series(rng, 3, false);
        den[0] = ratio(sample::uniform(rng, 1, 5), sample::uniform(rng, 1, 5));
        P p(num.coeffs()), q(den.coeffs());
        const int k = 12;
        auto s = rational_to_series(RationalFunction<Q>(p, q), k);
        EXPECT_EQ(s * TS::from_polynomial(q, k), TS::from_polynomial(p, k)) << "case " << i;
    }
}

TEST(SeriesProperty, FloatBackendWithinTolerance) {
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = sample::case_rng(13, i);
        auto l = random_series(rng, 10, true);
        TruncatedSeries<Complex> lf(10);
        for (int n = 0; n <= 10; ++n) lf[static_cast<std::size_t>(n)] = Complex(l[static_cast<std::size_t>(n)].get_d(), 0);
        auto exact = series_exp(LogZeta<Q>(l));
        auto approx = series_exp(LogZeta<Complex>(lf));
        for (int n = 0; n <= 10; ++n)
            EXPECT_NEAR(approx[static_cast<std::size_t>(n)].real(), exact[static_cast<std::size_t>(n)].get_d(),
                        1e-9 * std::max(1.0, std::abs(exact[static_cast<std::size_t>(n)].get_d())));
    }
}

TEST(Series, NegativeOrderRejected) { EXPECT_THROW(TS(-1), PreconditionError); }
