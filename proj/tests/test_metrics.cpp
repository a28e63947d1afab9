#include <cmath>

#include <gtest/gtest.h>

#include "skpot/density.hpp"
#include "skpot/metrics.hpp"

using namespace skpot;

namespace {

ConformalDensity from_log(std::function<double(Point)> logl, double radius = 1.0)
{
    ConformalDensity d;
    d.lambda = [logl](Point z) { return std::exp(logl(z)); };
    d.domain = DiskDomain(radius);
    d.name = "custom";
    return d;
}

std::vector<Point> probe_points(double rmax, int n)
{
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        const double r = rmax * (0.1 + 0.85 * (i + 0.5) / n), th = 0.37 + 2.399963 * i;
        pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    return pts;
}

std::vector<Point> square_grid(double half, int n, const DiskDomain& keep)
{
    std::vector<Point> g;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Point z(-half + 2 * half * (i + 0.5) / n, -half + 2 * half * (j + 0.5) / n);
            if (keep.contains(z))
                g.push_back(z);
        }
    return g;
}

}  // namespace

TEST(ReferenceDensity, Examples)
{
    for (Point z : probe_points(0.95, 10))
        EXPECT_NEAR(reference_density(ReferenceKind::maximal, {0.0, 1.0}, z), hyperbolic_disk_density(z),
                    1e-12 * hyperbolic_disk_density(z));
    EXPECT_NEAR(reference_density(ReferenceKind::maximal, {1.0, 1.0}, {std::exp(-1.0), 0}), std::exp(1.0) / 2, 1e-14);
    EXPECT_EQ(reference_density(ReferenceKind::disk, {}, {0, 0}), 1.0);
    EXPECT_NEAR(reference_density(ReferenceKind::punctured, {}, {0.3, 0}),
                reference_density(ReferenceKind::maximal, {1.0, 1.0}, {0.3, 0}), 1e-15);
}

TEST(ReferenceDensity, Errors)
{
    EXPECT_THROW(reference_density(ReferenceKind::punctured, {}, {0, 0}), Error);
    EXPECT_THROW(reference_density(ReferenceKind::maximal, {0.5, 1.0}, {0, 0}), Error);
    EXPECT_THROW(reference_density(ReferenceKind::maximal, {0.5, 1.0}, {1.0, 0}), Error);
    EXPECT_THROW(reference_density(ReferenceKind::maximal, {1.5, 1.0}, {0.5, 0}), Error);
    EXPECT_THROW(reference_density(ReferenceKind::disk, {}, {1.0, 0}), Error);
}

TEST(ReferenceDensity, MonotoneInAlpha)
{
    const double alphas[] = {-1.0, 0.0, 0.25, 0.5, 0.75, 0.999, 1.0};
    for (Point z : square_grid(1.0, 40, DiskDomain(1.0, true)))
        for (int k = 0; k + 1 < 7; ++k)
            EXPECT_LE(maximal_density(alphas[k], 1.0, z), maximal_density(alphas[k + 1], 1.0, z) * (1 + 1e-12));
}

TEST(ConformalDensity, ClosedFormLaplaciansMatchNumerical)
{
    for (const auto& d : {densities::hyperbolic_disk(), densities::hyperbolic_punctured(), densities::maximal(0.3, 2.0),
                          densities::maximal(1.0, 1.5), densities::exp_x_squared()}) {
        for (Point z : probe_points(0.8 * d.domain.radius, 10)) {
            const double a = log_laplacian(d, z, LaplacianSource::closed_form);
            const double b = log_laplacian(d, z, LaplacianSource::numerical);
            EXPECT_NEAR(a, b, 1e-6 * (1 + std::abs(a))) << d.name;
        }
    }
}

TEST(HolomorphicMap, DerivativeMatchesDifferenceQuotient)
{
    for (const auto& f : {maps::identity(), maps::power(3), maps::mobius({0.2, -0.5}),
                          maps::compose(maps::mobius({0.1, 0.1}), maps::power(2))})
        for (Point w : probe_points(0.8, 8)) {
            const double h = 1e-5;
            const Point fd = (f(w + h) - f(w - h)) / (2 * h);
            const Point fd_i = (f(w + Point(0, h)) - f(w - Point(0, h))) / Point(0, 2 * h);
            EXPECT_LT(std::abs(fd - f.deriv(w)), 1e-6) << f.name;
            EXPECT_LT(std::abs(fd_i - f.deriv(w)), 1e-6) << f.name;
        }
}

TEST(Pullback, Examples)
{
    const auto hd = densities::hyperbolic_disk();
    for (Point w : probe_points(0.9, 5))
        EXPECT_EQ(pullback(hd, maps::identity(), w), hd(w));
    EXPECT_EQ(pullback(hd, maps::power(2), {0, 0}), 0.0);
    EXPECT_NEAR(pullback(hd, maps::power(2), {0.5, 0}), 16.0 / 15.0, 1e-14);
    ConformalDensity small = hd.restricted(DiskDomain(0.5));
    try {
        pullback(small, maps::identity(), {0.7, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "image escapes metric domain");
    }
}

TEST(Curvature, LaplaceExamples)
{
    EXPECT_NEAR(curvature_laplace(densities::hyperbolic_disk(), {0.5, 0}), -4.0, 1e-12);
    EXPECT_NEAR(curvature_laplace(densities::hyperbolic_punctured(), {0.3, 0}), -4.0, 1e-12);
    EXPECT_NEAR(curvature_laplace(densities::exp_x_squared(), {0, 0}), -2.0, 1e-12);
    EXPECT_NEAR(curvature_laplace(densities::exp_x_squared(), {0, 0}, LaplacianSource::numerical), -2.0, 1e-6);
}

TEST(Curvature, ZeroDensityErrors)
{
    const auto pb = pullback_density(densities::hyperbolic_disk(), maps::power(2), DiskDomain(1.0));
    try {
        curvature_laplace(pb, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "curvature undefined at zero density");
    }
    EXPECT_THROW(curvature_meanvalue(pb, {0, 0}), Error);
}

TEST(Curvature, MeanValueExamples)
{
    EXPECT_NEAR(curvature_meanvalue(from_log([](Point z) { return z.real() * z.real() - z.imag() * z.imag(); }), {0, 0}),
                0.0, 1e-9);
    EXPECT_NEAR(curvature_meanvalue(from_log([](Point z) { return std::norm(z); }), {0, 0}), -4.0, 1e-9);
    EXPECT_NEAR(curvature_meanvalue(densities::hyperbolic_disk(), {0, 0}), -4.0, 1e-3);
    EXPECT_THROW(curvature_meanvalue(densities::hyperbolic_disk(), {0, 0}, std::vector<double>{0.1, 0.05, 0.02}), Error);
}

TEST(Curvature, DefinitionsAgree)
{
    for (const auto& d : {densities::hyperbolic_disk(), densities::exp_x_squared(), densities::maximal(0.5, 1.0)})
        for (Point z : probe_points(0.9, 20)) {
            const double a = curvature_laplace(d, z), b = curvature_meanvalue(d, z);
            EXPECT_NEAR(a, b, 1e-3 * std::abs(a)) << d.name;
        }
}

TEST(Curvature, PullbackUnderSquareKeepsMinusFour)
{
    const auto pb = pullback_density(densities::hyperbolic_disk(), maps::power(2), DiskDomain(1.0));
    for (Point w : probe_points(0.9, 10)) {
        EXPECT_NEAR(curvature_laplace(pb, w, LaplacianSource::numerical), -4.0, 1e-3);
        EXPECT_NEAR(curvature_laplace(pb, w, LaplacianSource::closed_form), -4.0, 1e-10);
    }
}

TEST(Curvature, ScalingDividesByCSquared)
{
    const auto hd = densities::hyperbolic_disk();
    EXPECT_NEAR(curvature_laplace(hd.scaled(0.5), {0.3, 0.1}), -16.0, 1e-10);
    EXPECT_NEAR(curvature_laplace(hd.scaled(2.0), {0.3, 0.1}), -1.0, 1e-12);
}

TEST(SkVerify, Examples)
{
    const auto hd = densities::hyperbolic_disk();
    const auto grid = square_grid(0.9, 9, hd.domain);
    const auto a = sk_verify(hd, grid, 1e-6);
    EXPECT_TRUE(a.passed);
    EXPECT_NEAR(a.worst_margin, 0.0, 1e-12);
    EXPECT_EQ(a.checked, grid.size());
    const auto b = sk_verify(hd.scaled(0.5), grid, 1e-6);
    EXPECT_TRUE(b.passed);
    EXPECT_NEAR(b.worst_margin, 12.0, 1e-9);
    const auto c = sk_verify(hd.scaled(2.0), grid, 1e-6);
    EXPECT_FALSE(c.passed);
    EXPECT_EQ(c.failures.size(), grid.size());
    EXPECT_NEAR(c.worst_margin, -3.0, 1e-9);
    const auto m = sk_verify(hd.scaled(2.0), grid, 1e-2, CurvatureRoute::mean_value);
    EXPECT_FALSE(m.passed);
}

TEST(SkVerify, SkipsZeroDensityPoints)
{
    const auto pb = pullback_density(densities::hyperbolic_disk(), maps::power(2), DiskDomain(1.0));
    const auto rep = sk_verify(pb, {{0, 0}, {0.3, 0.2}}, 1e-6);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.skipped, 1u);
    EXPECT_EQ(rep.checked, 1u);
}

TEST(OrderOf, Examples)
{
    const auto radii = dyadic_radii(4, 20);
    ASSERT_EQ(radii.size(), 17u);
    EXPECT_EQ(radii.front(), 1.0 / 16);
    const auto half = order_of_density(densities::maximal(0.5, 1.0), radii);
    EXPECT_NEAR(half.alpha, 0.5, 0.02);
    EXPECT_GE(half.fit_quality, 0.999);
    EXPECT_FALSE(half.cusp_flag);
    const auto zero = order_of([](Point) { return 0.0; }, radii);
    EXPECT_NEAR(zero.alpha, 0.0, 1e-12);
    EXPECT_FALSE(zero.cusp_flag);
    const auto cusp = order_of_density(densities::hyperbolic_punctured(), radii);
    EXPECT_TRUE(cusp.cusp_flag);
    EXPECT_EQ(cusp.alpha, 1.0);
    EXPECT_EQ(cusp.max_on_circle.size(), radii.size());
}

TEST(OrderOf, NegativeOrderAndErrors)
{
    const auto est = order_of_density(densities::maximal(-0.5, 1.0), dyadic_radii(4, 20));
    EXPECT_NEAR(est.alpha, -0.5, 0.02);
    EXPECT_THROW(order_of([](Point) { return NAN; }, dyadic_radii(4, 10)), Error);
}

TEST(Glue, SmallerInnerDensityLeavesLambda)
{
    const auto lam = densities::maximal(0.5, 1.0);
    const auto mu = lam.scaled(0.8).restricted(DiskDomain(0.5, true));
    std::vector<Point> probes;
    for (int k = 0; k < 8; ++k)
        probes.push_back(0.5 * Point(std::cos(k * pi / 4), std::sin(k * pi / 4)));
    const auto sigma = glue(lam, mu, probes, 1e-9);
    for (Point z : square_grid(0.95, 20, lam.domain))
        EXPECT_EQ(sigma(z), lam(z));
}

TEST(Glue, ViolatedConditionNamesProbe)
{
    const auto lam = densities::maximal(0.5, 1.0);
    const auto mu = densities::maximal(0.9, 1.0).restricted(DiskDomain(0.5, true));
    const std::vector<Point> probes = {{0.5, 0}, {0, 0.5}};
    try {
        glue(lam, mu, probes, 1e-6);
        FAIL();
    } catch (const GlueError& e) {
        EXPECT_EQ(e.probe(), Point(0.5, 0));
        EXPECT_NEAR(e.lambda_value(), std::sqrt(2.0), 1e-12);
        EXPECT_NEAR(e.mu_limsup(), maximal_density(0.9, 1.0, {0.5, 0}), 1e-3);
        EXPECT_NEAR(e.excess(), 0.0276, 5e-4);
        EXPECT_NE(std::string(e.what()).find("(0.5, 0)"), std::string::npos);
    }
}

TEST(Glue, CrossingExample)
{
    const auto hd = densities::hyperbolic_disk();
    const auto lam = pullback_density(hd, maps::power(2), DiskDomain(1.0));
    const auto mu = pullback_density(hd, maps::compose(maps::power(2), maps::mobius({0.3, 0})), DiskDomain(1.0));
    const auto sigma = glue(lam, mu, {}, 1e-2);
    EXPECT_EQ(lam(0), 0.0);
    // mu(0) = 2 |m(0) m'(0)| / (1 - |m(0)|^4) with m(0) = -0.3, m'(0) = 0.91
    EXPECT_NEAR(sigma(0), 2 * 0.3 * 0.91 / (1 - std::pow(0.3, 4)), 1e-12);
    EXPECT_NEAR(sigma(0), 0.5505, 1e-4);
    // Both branches are active somewhere.
    bool lam_wins = false, mu_wins = false;
    for (Point z : square_grid(0.9, 15, lam.domain)) {
        lam_wins |= lam(z) > mu(z);
        mu_wins |= mu(z) > lam(z);
    }
    EXPECT_TRUE(lam_wins && mu_wins);
    EXPECT_THROW(glue(mu.restricted(DiskDomain(0.5)), lam, {}, 1e-2), Error);
}

TEST(AhlforsMargin, Examples)
{
    const auto hd = densities::hyperbolic_disk();
    const auto pb = pullback_density(hd, maps::power(2), DiskDomain(1.0));
    const auto grid = square_grid(1.0, 41, hd.domain);
    EXPECT_GE(ahlfors_margin(pb, hd, grid), 0.0);
    EXPECT_NEAR(ahlfors_margin(pb, hd, {{0, 0}}), 1.0, 1e-15);
    for (Point z : grid) {
        const double r = std::abs(z);
        EXPECT_NEAR(hd(z) - pb(z), (1 - r) * (1 - r) / ((1 - r * r) * (1 + r * r)), 1e-10 * hd(z));
    }
    EXPECT_EQ(ahlfors_margin(hd, hd, grid), 0.0);
    const auto pgrid = square_grid(1.0, 40, DiskDomain(1.0, true));
    EXPECT_GE(ahlfors_margin(densities::maximal(0.5, 1.0), densities::maximal(0.9, 1.0), pgrid), 0.0);
}

TEST(AhlforsMargin, MaximalityOverTestFamily)
{
    for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
        const auto ref = densities::maximal(alpha, 1.0);
        const auto grid = square_grid(1.0, 60, ref.domain);
        for (double c : {0.3, 0.9, 1.0})
            EXPECT_GE(ahlfors_margin(ref.scaled(c), ref, grid), 0.0);
        for (double beta : {-1.0, 0.0, alpha / 2, alpha})
            EXPECT_GE(ahlfors_margin(densities::maximal(beta, 1.0), ref, grid), -1e-12);
    }
}

TEST(Liouville, Examples)
{
    const ScalarField zero([](Point) { return 0.0; });
    EXPECT_EQ(liouville_residual(zero, [](Point) { return 0.0; }, {0.2, 0.2}), 0.0);
    const auto minus4 = [](Point) { return -4.0; };
    const ScalarField uh = log_density_field(densities::hyperbolic_disk());
    for (Point z : probe_points(0.8, 6))
        EXPECT_NEAR(liouville_residual(uh, minus4, z), 0.0, 1e-6);
    const ScalarField um = log_density_field(densities::maximal(0.5, 1.0));
    EXPECT_NEAR(liouville_residual(um, minus4, {0.3, 0.2}), 0.0, 1e-6);
}

TEST(Remainder, Examples)
{
    const ScalarField u = log_density_field(densities::maximal(0.5, 1.0));
    EXPECT_NEAR(remainder_field(u, 0.5, {1e-8, 0}), std::log(0.5), 1e-4);
    const ScalarField pure([](Point z) { return -0.3 * std::log(std::abs(z)); });
    EXPECT_NEAR(remainder_field(pure, 0.3, {0.2, 0.4}), 0.0, 1e-15);
    const ScalarField w1 = log_density_field(densities::maximal(1.0, 1.0));
    for (Point z : probe_points(0.9, 5))
        EXPECT_NEAR(remainder_field(w1, 1.0, z), -std::log(2.0), 1e-12);
    EXPECT_THROW(remainder_field(u, 0.5, {0, 0}), Error);
}

TEST(AsymptoticSlope, RespectsDecayBound)
{
    for (double alpha : {0.5, 0.9}) {
        const ScalarField u = log_density_field(densities::maximal(alpha, 1.0));
        const double slope = asymptotic_slope(u, alpha, 3, dyadic_radii(4, 12));
        EXPECT_GE(slope, 2 - 2 * alpha - 3 - 0.15) << alpha;
    }
}

TEST(AsymptoticSlope, ZeroRemainderLosesSignal)
{
    const ScalarField pure([](Point z) { return -0.5 * std::log(std::abs(z)); });
    try {
        asymptotic_slope(pure, 0.5, 3, dyadic_radii(4, 12));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("signal lost"), std::string::npos);
    }
}

TEST(SubMean, LogDensityDifferenceIsSubharmonicWhereAbove)
{
    // Both have curvature -4, so Delta(u - v) = 4 (e^{2u} - e^{2v}) > 0 where u > v.
    const auto u = densities::maximal(0.75, 1.0), v = densities::maximal(0.25, 1.0);
    const auto diff = [&](Point z) { return std::log(u(z)) - std::log(v(z)); };
    for (Point z : probe_points(0.8, 12)) {
        ASSERT_GT(diff(z), 0.0);
        const double r = 0.25 * std::min(std::abs(z), 1 - std::abs(z));
        EXPECT_GE(sub_mean_gap(diff, z, r), 0.0);
    }
}
