#include <cmath>

#include <gtest/gtest.h>

#include "skpot/fields.hpp"
#include "skpot/potential.hpp"

using namespace skpot;

namespace {

PotentialProblem unit_constant() { return PotentialProblem(fields::constant(1.0), 1.0); }

// omega for f = 1 on the unit disk.
double omega_unit(Point z)
{
    const double a = std::abs(z);
    return a <= 1.0 ? (a * a - 1.0) / 4.0 : 0.5 * std::log(a);
}

const std::vector<Point> generic_points = {{0.2, 0.1}, {-0.3, 0.25}, {0.35, 0.35}, {0.1, -0.45}, {-0.15, -0.2}};

}  // namespace

TEST(PotentialProblem, Validation)
{
    EXPECT_THROW(PotentialProblem(fields::zero(), 0.0), Error);
    EXPECT_THROW(PotentialProblem(fields::zero(), 1.0, 0.9), Error);
    EXPECT_THROW(PotentialProblem(fields::zero(), 1.0, 1.0), Error);
    const PotentialProblem p(fields::constant(2.0), 0.5);
    EXPECT_DOUBLE_EQ(p.R, 0.75);
    EXPECT_EQ(p.density({0.6, 0}), 0.0);
    EXPECT_EQ(p.density({0.1, 0}), 2.0);
}

TEST(LogPotential, ConstantOnUnitDisk)
{
    const auto p = unit_constant();
    EXPECT_NEAR(log_potential(p, {0, 0}), -0.25, 1e-8);
    EXPECT_NEAR(log_potential(p, {std::exp(1.0), 0}), 0.5, 1e-8);
    for (Point z : {Point(0.3, 0.4), Point(-0.7, 0.2), Point(1.5, -0.5)})
        EXPECT_NEAR(log_potential(p, z), omega_unit(z), 1e-8);
}

TEST(LogPotential, ZeroField)
{
    const PotentialProblem p(fields::zero(), 0.8);
    for (Point z : generic_points) {
        EXPECT_EQ(log_potential(p, z), 0.0);
        for (MultiIndex j : indices_up_to(4)) {
            const auto rep = potential_deriv(p, z, j);
            EXPECT_EQ(rep.value, 0.0);
            EXPECT_EQ(rep.area_term, 0.0);
            for (double b : rep.boundary_terms)
                EXPECT_EQ(b, 0.0);
        }
    }
}

TEST(PotentialGrad, ConstantOnUnitDisk)
{
    const auto p = unit_constant();
    EXPECT_NEAR(potential_grad(p, {0, 0}, Axis::x1), 0.0, 1e-12);
    EXPECT_NEAR(potential_grad(p, {0, 0}, Axis::x2), 0.0, 1e-12);
    EXPECT_NEAR(potential_grad(p, {0.5, 0}, Axis::x1), 0.25, 1e-8);
    EXPECT_NEAR(potential_grad(p, {0.3, -0.4}, Axis::x2), -0.2, 1e-8);
    EXPECT_THROW(potential_grad(p, {1.2, 0}, Axis::x1), Error);
}

TEST(PotentialHess, ConstantOnUnitDisk)
{
    const auto p = unit_constant();
    EXPECT_NEAR(potential_hess(p, {0, 0}, Axis::x1, Axis::x1), 0.5, 1e-8);
    EXPECT_NEAR(potential_hess(p, {0, 0}, Axis::x1, Axis::x2), 0.0, 1e-12);
    EXPECT_NEAR(potential_hess(p, {0.4, 0.3}, Axis::x2, Axis::x2), 0.5, 1e-8);
}

TEST(PotentialHess, TraceEqualsField)
{
    for (const ScalarField& f : {fields::gaussian({0.1, -0.2}), fields::wave()}) {
        const PotentialProblem p(f, 0.8);
        for (Point z : generic_points) {
            const double tr = potential_hess(p, z, Axis::x1, Axis::x1) + potential_hess(p, z, Axis::x2, Axis::x2);
            EXPECT_NEAR(tr, f(z), 1e-3 * std::abs(f(z)));
        }
    }
}

TEST(PotentialHess, SymmetricInPair)
{
    const PotentialProblem p(fields::wave(), 0.8);
    EXPECT_NEAR(potential_hess(p, {0.2, 0.1}, Axis::x1, Axis::x2), potential_hess(p, {0.2, 0.1}, Axis::x2, Axis::x1),
                1e-10);
}

TEST(PotentialHess, HoelderExponentRequired)
{
    const ScalarField f([](Point) { return 1.0; }, [](MultiIndex, Point) { return 0.0; }, ScalarField::smooth,
                        std::nullopt);
    try {
        potential_hess(PotentialProblem(f, 0.8), {0.1, 0}, Axis::x1, Axis::x1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "Hölder exponent required");
    }
}

TEST(PotentialDeriv, ReportBookkeeping)
{
    const PotentialProblem p(fields::gaussian(), 0.8);
    for (MultiIndex j : {MultiIndex(3, 0), MultiIndex(1, 2), MultiIndex(2, 2), MultiIndex(1, 1)}) {
        const auto rep = potential_deriv(p, {0.2, 0.1}, j);
        EXPECT_EQ(rep.index, j);
        EXPECT_EQ(rep.value, rep.area_term - rep.boundary_sum());
        EXPECT_EQ(rep.R_used, p.R);
        EXPECT_EQ(static_cast<int>(rep.boundary_terms.size()), std::max(1, j.order() - 1));
    }
}

TEST(PotentialDeriv, ConstantFieldThirdDerivativesVanish)
{
    const PotentialProblem p(fields::constant(1.0), 0.8);
    for (Point z : generic_points)
        for (MultiIndex j : {MultiIndex(3, 0), MultiIndex(2, 1), MultiIndex(1, 2), MultiIndex(0, 3)})
            EXPECT_NEAR(potential_deriv(p, z, j).value, 0.0, 1e-5) << j.str();
}

TEST(PotentialDeriv, MatchesFiniteDifferenceOracle)
{
    const PotentialProblem p(fields::gaussian(), 0.8);
    for (Point z : {Point(0.1, 0.0), Point(0.2, 0.1), Point(-0.3, 0.25)})
        for (MultiIndex j : {MultiIndex(3, 0), MultiIndex(2, 1), MultiIndex(1, 2), MultiIndex(0, 3), MultiIndex(2, 2)}) {
            const double a = potential_deriv(p, z, j).value, b = fd_oracle(p, z, j);
            EXPECT_NEAR(a, b, 1e-3 * std::abs(b) + 1e-9) << j.str();
        }
}

TEST(PotentialDeriv, LowOrdersDelegate)
{
    const PotentialProblem p(fields::wave(), 0.8);
    const Point z(0.2, -0.1);
    EXPECT_EQ(potential_deriv(p, z, {0, 0}).value, log_potential(p, z));
    EXPECT_EQ(potential_deriv(p, z, {0, 1}).value, potential_grad(p, z, Axis::x2));
    EXPECT_EQ(potential_deriv(p, z, {1, 1}).value, potential_hess(p, z, Axis::x1, Axis::x2));
}

TEST(PotentialDeriv, IndependentOfExtensionRadius)
{
    const PotentialProblem p(fields::wave(), 0.8);
    for (MultiIndex j : {MultiIndex(2, 0), MultiIndex(2, 1), MultiIndex(0, 4)}) {
        const double a = potential_deriv(p, {0.1, 0.3}, j).value;
        for (double R : {1.0, 1.5, 2.5})
            EXPECT_NEAR(potential_deriv(p.with_extension(R), {0.1, 0.3}, j).value, a, 1e-6 * (1 + std::abs(a)));
    }
}

TEST(PotentialDeriv, StepOrderingDoesNotMatter)
{
    const PotentialProblem p(fields::gaussian({0.2, 0.1}), 0.8);
    for (MultiIndex j : {MultiIndex(2, 1), MultiIndex(1, 2), MultiIndex(2, 2), MultiIndex(3, 1)}) {
        const auto a = potential_deriv(p, {-0.1, 0.2}, j, StepOrder::x_first);
        const auto b = potential_deriv(p, {-0.1, 0.2}, j, StepOrder::y_first);
        EXPECT_NEAR(a.value, b.value, 1e-10 * (1 + std::abs(a.value))) << j.str();
    }
}

TEST(PotentialDeriv, Errors)
{
    const PotentialProblem p(fields::gaussian(), 0.8);
    EXPECT_THROW(potential_deriv(p, {0.9, 0}, {3, 0}), Error);
    const ScalarField rough = fields::gaussian().with_regularity(0, 0.5);
    try {
        potential_deriv(PotentialProblem(rough, 0.8), {0.1, 0}, {3, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "insufficient smoothness for order 3");
    }
    // C^{1,nu} is just enough for order 3.
    const ScalarField c1 = fields::gaussian().with_regularity(1, 0.5);
    EXPECT_NO_THROW(potential_deriv(PotentialProblem(c1, 0.8), {0.1, 0.1}, {2, 1}));
}

TEST(FdOracle, ConstantOnUnitDisk)
{
    const auto p = unit_constant();
    EXPECT_NEAR(fd_oracle(p, {0, 0}, {2, 0}, 1e-3), 0.5, 1e-6);
    EXPECT_NEAR(fd_oracle(p, {0.5, 0}, {1, 0}, 1e-3), 0.25, 1e-6);
    EXPECT_EQ(fd_oracle(PotentialProblem(fields::zero(), 1.0), {0.1, 0.1}, {2, 1}, 1e-2), 0.0);
}

TEST(FdOracle, Errors)
{
    const auto p = unit_constant();
    EXPECT_THROW(fd_oracle(p, {0.99, 0}, {2, 0}, 1e-2), Error);
    EXPECT_THROW(fd_oracle(p, {0, 0}, {2, 0}, 0.0), Error);
}

TEST(GreensIdentity, Examples)
{
    fields::Polynomial x1, x2, x1sq;
    x1.add({1, 0}, 1.0);
    x2.add({0, 1}, 1.0);
    x1sq.add({2, 0}, 1.0);
    EXPECT_NEAR(greens_identity_residual(fields::constant(1.0), x1.field(), Axis::x1, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(greens_identity_residual(x1sq.field(), x2.field(), Axis::x1, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(greens_identity_residual(fields::zero(), fields::wave(), Axis::x2, 1.0), 0.0, 1e-15);
}

TEST(GreensIdentity, SmoothFields)
{
    const ScalarField u = fields::gaussian({0.3, -0.2}), v = fields::wave();
    for (Axis m : {Axis::x1, Axis::x2})
        for (double radius : {0.5, 1.0, 1.7})
            EXPECT_NEAR(greens_identity_residual(u, v, m, radius), 0.0, 1e-10);
}
