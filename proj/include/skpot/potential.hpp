#pragma once

#include <optional>
#include <vector>

#include "kernel.hpp"
#include "multi_index.hpp"
#include "quadrature.hpp"
#include "scalar_field.hpp"
#include "taylor.hpp"

namespace skpot {

/// Density f supported on D_r (zero outside), together with the extension
/// radius R > r over which the derivative formulas integrate.
struct PotentialProblem {
    ScalarField f;
    double r = 1.0;
    double R = 1.5;
    QuadratureConfig config{};

    PotentialProblem(ScalarField field, double support_radius, std::optional<double> extension = std::nullopt,
                     QuadratureConfig cfg = {})
        : f(std::move(field)), r(support_radius), R(extension.value_or(1.5 * support_radius)), config(cfg)
    {
        if (!(r > 0.0))
            throw Error("support radius must be positive");
        if (!(R > r))
            throw Error("extension radius R must exceed the support radius r");
        config.validate();
    }

    PotentialProblem with_extension(double new_R) const { return PotentialProblem(f, r, new_R, config); }

    /// f extended by zero outside D_r.
    double density(Point zeta) const { return std::abs(zeta) < r ? f(zeta) : 0.0; }
};

enum class Axis { x1 = 1, x2 = 2 };

inline MultiIndex unit(Axis a) { return a == Axis::x1 ? unit_x : unit_y; }
inline double component(Point v, Axis a) { return a == Axis::x1 ? v.real() : v.imag(); }
inline double component(Point v, MultiIndex e) { return e == unit_x ? v.real() : v.imag(); }

/// Term-by-term account of a derivative of the potential:
/// value = area_term - sum(boundary_terms).
struct DerivativeReport {
    MultiIndex index;
    double value = 0.0;
    double area_term = 0.0;
    std::vector<double> boundary_terms;
    double R_used = 0.0;

    double boundary_sum() const
    {
        double s = 0.0;
        for (double b : boundary_terms)
            s += b;
        return s;
    }
};

namespace detail {

inline void require_interior(const PotentialProblem& p, Point z)
{
    if (!(std::abs(z) < p.r))
        throw Error("evaluation point must lie inside the support disk D_r");
}

inline DerivativeReport finish(MultiIndex j, double area, std::vector<double> boundary, double R)
{
    DerivativeReport rep;
    rep.index = j;
    rep.area_term = area;
    rep.boundary_terms = std::move(boundary);
    rep.R_used = R;
    rep.value = rep.area_term - rep.boundary_sum();
    return rep;
}

}  // namespace detail

/// omega(z) = (1/2pi) int_{D_r} log|z - zeta| f(zeta) d sigma.
inline double log_potential(const PotentialProblem& p, Point z)
{
    const auto g = [&](Point zeta) { return zeta == z ? 0.0 : std::log(std::abs(z - zeta)) * p.f(zeta); };
    std::optional<Point> sing;
    if (std::abs(z) < p.r)
        sing = z;
    return disk_integral(g, DiskDomain(p.r), p.config, sing) / two_pi;
}

/// d omega / d x_axis at z in D_r, integrating the 1/|z - zeta| kernel directly.
inline double potential_grad(const PotentialProblem& p, Point z, Axis axis)
{
    detail::require_interior(p, z);
    const MultiIndex e = unit(axis);
    const auto g = [&](Point zeta) { return zeta == z ? 0.0 : kernel_partial(e, z, zeta) * p.f(zeta); };
    return disk_integral(g, DiskDomain(p.r), p.config, z) / two_pi;
}

/// Second derivative d_l d_j omega(z): the area integral over D_R of
/// d_l d_j log|z - zeta| (f(zeta) - f(z)) minus f(z) times the contour
/// integral over |zeta| = R of d_j log|z - zeta| N_l.
inline DerivativeReport potential_hess_report(const PotentialProblem& p, Point z, Axis l, Axis j)
{
    detail::require_interior(p, z);
    if (!p.f.hoelder_nu())
        throw Error("Hölder exponent required");
    const MultiIndex ij = unit(l) + unit(j);
    const double fz = p.f(z);
    const auto inner = [&](Point zeta) {
        return zeta == z ? 0.0 : kernel_partial(ij, z, zeta) * (p.f(zeta) - fz);
    };
    const auto outer = [&](Point zeta) { return -kernel_partial(ij, z, zeta) * fz; };
    const double area = disk_integral(inner, DiskDomain(p.r), p.config, z) + annulus_integral(outer, p.r, p.R, p.config);
    const auto contour = [&](Point zeta) {
        return kernel_partial(unit(j), z, zeta) * component(zeta / std::abs(zeta), l);
    };
    const double boundary = fz * circle_integral(contour, p.R, p.config);
    return detail::finish(ij, area / two_pi, {boundary / two_pi}, p.R);
}

inline double potential_hess(const PotentialProblem& p, Point z, Axis l, Axis j)
{
    return potential_hess_report(p, z, l, j).value;
}

/// d^j omega(z) for any multi-index. Orders n >= 3 use
///   (1/2pi) int_{D_R} d^j log|z-zeta| (f(zeta) - P_{n-2}[f](z,zeta)) d sigma
///   - (1/2pi) sum_{tau=1}^{n-1} int_{|zeta|=R} d^{theta_tau} log|z-zeta|
///                                  P_{tau-1}[d^{phi_tau} f](z,zeta) <N, e_{tau+1}> |d zeta|,
/// with f extended by zero on r <= |zeta| < R. Orders 1 and 2 delegate to
/// potential_grad / potential_hess_report; order 0 is log_potential.
inline DerivativeReport potential_deriv(const PotentialProblem& p, Point z, MultiIndex j,
                                        StepOrder order = StepOrder::x_first)
{
    const int n = j.order();
    if (n == 0) {
        const double v = log_potential(p, z);
        return detail::finish(j, v, {}, p.R);
    }
    if (n == 1)
        return detail::finish(j, potential_grad(p, z, j.j1 ? Axis::x1 : Axis::x2), {}, p.R);
    if (n == 2) {
        const Axis l = j.j1 >= 1 ? Axis::x1 : Axis::x2;
        const Axis m = j.j2 >= 1 ? Axis::x2 : Axis::x1;
        return potential_hess_report(p, z, l, m);
    }
    detail::require_interior(p, z);
    const int need = n - 2;
    const int have = p.f.smoothness();
    if (have < need || (have == need && !p.f.hoelder_nu()))
        throw Error("insufficient smoothness for order " + std::to_string(n));

    const IndexDecomposition dec = decompose(j, order);
    const TaylorPolynomial taylor(p.f, n - 2, z);

    const auto inner = [&](Point zeta) {
        return zeta == z ? 0.0 : kernel_partial(j, z, zeta) * (p.f(zeta) - taylor(zeta));
    };
    const auto outer = [&](Point zeta) { return -kernel_partial(j, z, zeta) * taylor(zeta); };
    const double area = disk_integral(inner, DiskDomain(p.r), p.config, z) + annulus_integral(outer, p.r, p.R, p.config);

    std::vector<double> boundary;
    boundary.reserve(dec.triples.size());
    for (std::size_t t = 0; t < dec.triples.size(); ++t) {
        const auto& tri = dec.triples[t];
        const int tau = static_cast<int>(t) + 1;
        const TaylorPolynomial local(p.f.derivative(tri.phi), tau - 1, z);
        const auto contour = [&](Point zeta) {
            return kernel_partial(tri.theta, z, zeta) * local(zeta) * component(zeta / std::abs(zeta), tri.step);
        };
        boundary.push_back(circle_integral(contour, p.R, p.config) / two_pi);
    }
    return detail::finish(j, area / two_pi, std::move(boundary), p.R);
}

/// Default finite-difference step for fd_oracle: 1e-3 r up to second order,
/// widened for higher orders where round-off dominates.
inline double default_fd_step(const PotentialProblem& p, MultiIndex j)
{
    switch (j.order()) {
    case 0:
    case 1:
    case 2:
        return 1e-3 * p.r;
    case 3:
        return 1e-2 * p.r;
    default:
        return 2.5e-2 * p.r;
    }
}

/// Independent check: Richardson-extrapolated central differences of the
/// directly quadratured potential.
inline double fd_oracle(const PotentialProblem& p, Point z, MultiIndex j, double h)
{
    if (!(h > 0.0))
        throw Error("finite-difference step must be positive");
    if (!(p.r - std::abs(z) > j.order() * h))
        throw Error("finite-difference stencil exits the support disk");
    return richardson_difference([&](Point w) { return log_potential(p, w); }, j, z, h);
}

inline double fd_oracle(const PotentialProblem& p, Point z, MultiIndex j)
{
    return fd_oracle(p, z, j, default_fd_step(p, j));
}

/// int_D (u d_m v + v d_m u) d sigma - int_{dD} u v N_m |d zeta| over the disk
/// |zeta| < radius; zero for C^1 fields.
inline double greens_identity_residual(const ScalarField& u, const ScalarField& v, Axis m, double radius,
                                       const QuadratureConfig& cfg = {})
{
    const MultiIndex e = unit(m);
    const auto area_fn = [&](Point zeta) { return u(zeta) * v.partial(e, zeta) + v(zeta) * u.partial(e, zeta); };
    const auto contour = [&](Point zeta) { return u(zeta) * v(zeta) * component(zeta / std::abs(zeta), m); };
    return disk_integral(area_fn, DiskDomain(radius), cfg) - circle_integral(contour, radius, cfg);
}

}  // namespace skpot
