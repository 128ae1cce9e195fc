#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pcm/errors.hpp"
#include "pcm/pce_model.hpp"
#include "pcm/rng.hpp"

using namespace pcm;

namespace {

PceModel make_model(unsigned n, unsigned d, std::vector<double> coeffs) {
    PceModel m;
    m.inputs.resize(n);
    for (unsigned i = 0; i < n; ++i) {
        m.inputs[i].name = "x" + std::to_string(i);
        m.inputs[i].family = Family::Normal;
        m.inputs[i].p1 = 0.0;
        m.inputs[i].p2 = 1.0;
    }
    m.degree = d;
    m.terms = basis_terms(n, d);
    REQUIRE(m.terms.size() == coeffs.size());
    m.coeffs = std::move(coeffs);
    return m;
}

}  // namespace

TEST_CASE("evaluate") {
    // 2 + 3 xi1 + 0.5 (xi1^2 - 1), terms (0,0),(1,0),(0,1),(2,0),(0,2),(1,1)
    auto m = make_model(2, 2, {2.0, 3.0, 0.0, 0.5, 0.0, 0.0});
    double origin[] = {0.0, 0.0};
    CHECK(evaluate(m, origin) == doctest::Approx(1.5));

    auto u = make_model(1, 2, {2.0, 3.0, 0.5});
    double one[] = {1.0};
    CHECK(evaluate(u, one) == doctest::Approx(5.0));  // He_2(1) = 0

    double wrong[] = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(evaluate(m, wrong), ShapeError);
}

TEST_CASE("sample_output") {
    auto constant = make_model(2, 1, {7.25, 0.0, 0.0});
    auto s = sample_output(constant, 1000, 5);
    CHECK(std::all_of(s.begin(), s.end(), [](double v) { return v == 7.25; }));

    auto linear = make_model(1, 1, {0.0, 1.0});
    auto big = sample_output(linear, 1000000, 6);
    double mean = 0.0;
    for (double v : big) mean += v;
    mean /= static_cast<double>(big.size());
    CHECK(std::abs(mean) < 0.005);

    auto again = sample_output(linear, 1000, 6);
    CHECK(std::equal(again.begin(), again.end(), big.begin()));
}

TEST_CASE("stats: analytic vs sampled") {
    auto m = make_model(1, 2, {2.0, 3.0, 0.5});
    auto r = stats(m, 1000000, 9);
    REQUIRE(r.analytic_mean);
    REQUIRE(r.analytic_variance);
    CHECK(*r.analytic_mean == doctest::Approx(2.0));
    CHECK(*r.analytic_variance == doctest::Approx(9.5));
    CHECK(r.mean == doctest::Approx(2.0).epsilon(0.01));
    CHECK(r.variance == doctest::Approx(9.5).epsilon(0.01));
    CHECK(r.std_dev == doctest::Approx(std::sqrt(r.variance)));

    auto c = make_model(1, 1, {3.0, 0.0});
    auto rc = stats(c, 1000, 2);
    CHECK(rc.variance == 0.0);
    CHECK(rc.pdf_curve.degenerate);
}

TEST_CASE("analytic/sampled agreement on random expansions") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t N = 1000000;
    int cases = 0;
    for (auto [n, d] : {std::pair{1u, 3u}, {2u, 2u}, {3u, 3u}}) {
        std::vector<double> coeffs(basis_count(n, d));
        for (auto& c : coeffs) c = u(gen);
        auto m = make_model(n, d, coeffs);
        auto r = stats(m, N, 1000 + cases++);
        double av = *r.analytic_variance;
        CHECK(std::abs(r.mean - coeffs[0]) <= 4.0 * std::sqrt(av / static_cast<double>(N)));
        CHECK(r.variance == doctest::Approx(av).epsilon(0.02));
    }
}

TEST_CASE("affine equivariance of mean and variance") {
    auto m = make_model(2, 2, {1.0, 0.5, -0.25, 0.75, 0.3, -0.6});
    auto scaled = m;
    const double c = -2.5;
    for (auto& a : scaled.coeffs) a *= c;
    CHECK(analytic_mean(scaled) == doctest::Approx(c * analytic_mean(m)));
    CHECK(analytic_variance(scaled) == doctest::Approx(c * c * analytic_variance(m)));
    auto r = stats(m, 100000, 3);
    auto rs = stats(scaled, 100000, 3);
    CHECK(rs.mean == doctest::Approx(c * r.mean));
    CHECK(rs.variance == doctest::Approx(c * c * r.variance));
}

TEST_CASE("pdf_estimate") {
    SUBCASE("standard normal density") {
        auto s = sample_srv(100000, 8);
        auto curve = pdf_estimate(s, 256);
        CHECK_FALSE(curve.degenerate);
        // Value nearest 0 should approximate 1/sqrt(2 pi).
        double best = 1e9, at0 = 0.0;
        for (const auto& p : curve.points)
            if (std::abs(p.x) < best) {
                best = std::abs(p.x);
                at0 = p.density;
            }
        CHECK(at0 == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(0.05));
        // Nonnegative and trapezoid-normalized.
        double integral = 0.0;
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            CHECK(curve.points[i].density >= 0.0);
            integral += 0.5 * (curve.points[i].density + curve.points[i - 1].density) *
                        (curve.points[i].x - curve.points[i - 1].x);
        }
        CHECK(std::abs(integral - 1.0) <= 1e-3);
    }
    SUBCASE("degenerate samples") {
        std::vector<double> flat(500, 3.25);
        auto curve = pdf_estimate(flat, 64);
        CHECK(curve.degenerate);
        REQUIRE(curve.points.size() == 1);
        CHECK(curve.points[0].x == 3.25);
    }
    SUBCASE("preconditions") {
        std::vector<double> few(50, 1.0);
        CHECK_THROWS_AS(pdf_estimate(few, 64), ParamDomainError);
        std::vector<double> ok(200, 1.0);
        CHECK_THROWS_AS(pdf_estimate(ok, 8), ParamDomainError);
    }
}

TEST_CASE("skewness of an asymmetric expansion") {
    // y = xi + 0.3 (xi^2 - 1) has positive skew.
    auto m = make_model(1, 2, {0.0, 1.0, 0.3});
    auto r = stats(m, 200000, 4);
    CHECK(r.skewness > 0.5);
    auto sym = make_model(1, 1, {0.0, 1.0});
    auto rs = stats(sym, 200000, 4);
    CHECK(std::abs(rs.skewness) < 0.05);
}
