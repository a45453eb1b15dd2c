// speclab: tests for the quadrature rules and the dense linear algebra that
// everything downstream leans on, in double and in the wide tiers.
// MIT license; see LICENSE at the repository root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "speclab/linalg.hpp"
#include "speclab/precision.hpp"
#include "speclab/quadrature.hpp"

using namespace speclab;

TEST_CASE("gauss_legendre reproduces the classical low-order rules") {
    std::vector<double> x, w;
    gauss_legendre<double>(2, x, w);
    CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(+1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));

    gauss_legendre<double>(3, x, w);
    CHECK(x[0] == doctest::Approx(-std::sqrt(3.0 / 5.0)).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre is exact through degree 2n-1") {
    std::vector<double> x, w;
    gauss_legendre<double>(16, x, w);
    double wsum = 0.0;
    for (int i = 0; i < 16; ++i) {
        wsum += w[i];
        if (i) CHECK(x[i] > x[i - 1]);
        CHECK(w[i] > 0.0);
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));

    for (int k = 0; k <= 31; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 16; ++i) acc += w[i] * std::pow(x[i], k);
        const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(acc - exact) <= 2e-15);
    }
}

TEST_CASE("gauss_legendre carries to the wide tiers") {
    std::vector<f128> x, w;
    gauss_legendre<f128>(24, x, w);
    f128 wsum(0);
    for (const auto& v : w) wsum += v;
    CHECK(to_double(abs(wsum - f128(2))) <= 1e-30);

    std::vector<double> xd, wd;
    gauss_legendre<double>(24, xd, wd);
    for (int i = 0; i < 24; ++i) CHECK(std::abs(to_double(x[i]) - xd[i]) <= 1e-15);

    std::vector<bf50> x50, w50;
    gauss_legendre<bf50>(12, x50, w50);
    bf50 moment(0);
    for (int i = 0; i < 12; ++i) moment += w50[i] * x50[i] * x50[i];
    CHECK(to_double(abs(moment - bf50(2) / 3)) <= 1e-45);
}

TEST_CASE("composite panels integrate an oscillatory function") {
    // int_0^1 cos(50 t) dt = sin(50)/50
    auto rule = composite_gl<double>(uniform_breaks(0.0, 1.0, 12), 16);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.w[i] * std::cos(50.0 * rule.x[i]);
    CHECK(acc == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-13));
}

TEST_CASE("lu factorization solves and measures determinants") {
    Matrix<double> m(3, 3);
    const double vals[9] = {2, 1, 1, 1, 3, 2, 1, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = vals[3 * i + j];
    // det = -1 by cofactor expansion along the last row
    auto f = lu_factor(m);
    CHECK(lu_log_abs_det(f) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(lu_det_sign(f) == -1);

    std::vector<double> b = {1.0, 2.0, 3.0};
    auto x = b;
    lu_solve(f, x);
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) acc += vals[3 * i + j] * x[j];
        CHECK(acc == doctest::Approx(b[i]).epsilon(1e-13));
    }
}

TEST_CASE("lu on a random dense system keeps small residuals") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 40;
    Matrix<double> m(n, n);
    std::vector<double> xs(n), b(n, 0.0);
    for (int i = 0; i < n; ++i) xs[i] = u(rng);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u(rng) + (i == j ? 4.0 : 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i] += m(i, j) * xs[j];

    auto f = lu_factor(m);
    lu_solve(f, b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(b[i] - xs[i]) <= 1e-12);
}

TEST_CASE("lu handles pivot-heavy systems exactly like pivot-free ones") {
    // Every column's largest entry sits off the diagonal, so each elimination
    // step swaps rows; a solve that mishandles the recorded permutation lands
    // far from the planted solution.
    const int n = 24;
    Matrix<double> m(n, n);
    std::vector<double> xs(n), b(n, 0.0);
    for (int i = 0; i < n; ++i) {
        xs[i] = std::sin(1.0 + i);
        for (int j = 0; j < n; ++j) m(i, j) = 1.0 / (1.0 + i + j) + (i == (j + 5) % n ? 3.0 : 0.0);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i] += m(i, j) * xs[j];
    auto f = lu_factor(m);
    int swaps = 0;
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k) ++swaps;
    CHECK(swaps >= n / 2);
    lu_solve(f, b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(b[i] - xs[i]) <= 1e-12);
}

TEST_CASE("lu rejects a singular matrix") {
    Matrix<double> m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 2.0;
    m(1, 1) = 4.0;
    CHECK_THROWS_AS(lu_factor(std::move(m)), ConvergenceError);
}

TEST_CASE("symmetric eigenvalues of the discrete Laplacian") {
    // tridiag(-1, 2, -1) of size n has eigenvalues 2 - 2 cos(k pi/(n+1)).
    const int n = 12;
    Matrix<double> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i == j) ? 2.0 : (std::abs(i - j) == 1 ? -1.0 : 0.0);
    auto ev = symmetric_eigenvalues(std::move(m));
    REQUIRE(int(ev.size()) == n);
    for (int k = 1; k <= n; ++k) {
        const double want = 2.0 - 2.0 * std::cos(k * M_PI / (n + 1));
        CHECK(ev[k - 1] == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("symmetric eigenvalues in the f128 tier narrow to the double answer") {
    const int n = 8;
    Matrix<f128> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i == j) ? f128(2) : (std::abs(i - j) == 1 ? f128(-1) : f128(0));
    auto ev = symmetric_eigenvalues(std::move(m));
    for (int k = 1; k <= n; ++k) {
        const double want = 2.0 - 2.0 * std::cos(k * M_PI / (n + 1));
        CHECK(std::abs(to_double(ev[k - 1]) - want) <= 1e-14);
    }
}

TEST_CASE("tier ladder selects and rejects intervals as documented") {
    CHECK(tier_for_interval(0.5) == Tier::f64);
    CHECK(tier_for_interval(1.2) == Tier::f64);
    CHECK(tier_for_interval(1.5) == Tier::f128);
    CHECK(tier_for_interval(2.5) == Tier::dec50);
    CHECK(tier_for_interval(3.5) == Tier::dec100);
    CHECK_THROWS_AS(tier_for_interval(4.5), RangeError);
    CHECK_THROWS_AS(tier_for_interval(0.0), InvalidArgument);
    CHECK_THROWS_AS(tier_for_interval(-1.0), InvalidArgument);
}

TEST_CASE("decimal round trips preserve every tier bit-for-bit") {
    const double d = 0.1234567890123456789;
    CHECK(real_from_decimal<double>(to_decimal(d)) == d);
    const f128 q = f128(1) / 3;
    CHECK(real_from_decimal<f128>(to_decimal(q)) == q);
    const bf50 h = bf50(1) / 7;
    CHECK(real_from_decimal<bf50>(to_decimal(h)) == h);
}
