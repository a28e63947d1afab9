#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "skpot.hpp"

namespace skpot {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   ///< worst observed deviation
    double tolerance = 0.0;
};

namespace selfcheck_detail {

inline std::vector<Point> probe_ring(double radius_max, int count, double phase = 0.37)
{
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
        const double rad = radius_max * (0.1 + 0.85 * (i + 0.5) / count);
        const double th = phase + 2.399963 * i;  // golden angle
        pts.emplace_back(rad * std::cos(th), rad * std::sin(th));
    }
    return pts;
}

inline std::vector<Point> square_grid(double half_width, int n, const DiskDomain& keep)
{
    std::vector<Point> g;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Point z(-half_width + 2 * half_width * (i + 0.5) / n, -half_width + 2 * half_width * (j + 0.5) / n);
            if (keep.contains(z))
                g.push_back(z);
        }
    return g;
}

inline fields::Polynomial random_polynomial(std::mt19937_64& rng, int degree)
{
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    fields::Polynomial p;
    for (MultiIndex a : indices_up_to(degree))
        p.add(a, coef(rng));
    return p;
}

inline CheckResult make(std::string name, double measured, double tol)
{
    return {std::move(name), measured <= tol, measured, tol};
}

}  // namespace selfcheck_detail

/// Invariant suite behind `skpot selfcheck`. Deterministic.
inline std::vector<CheckResult> run_selfcheck()
{
    using namespace selfcheck_detail;
    std::vector<CheckResult> out;
    const auto guarded = [&](const std::string& name, double tol, const std::function<double()>& fn) {
        try {
            out.push_back(make(name, fn(), tol));
        } catch (const std::exception& e) {
            out.push_back({name + " [" + e.what() + "]", false, std::numeric_limits<double>::infinity(), tol});
        }
    };

    guarded("kernel harmonicity", 1e-12, [] {
        double worst = 0;
        for (Point z : probe_ring(1.0, 12))
            for (Point zeta : probe_ring(1.0, 7, 1.1))
                if (std::abs(z - zeta) > 0.05)
                    worst = std::max(worst, std::abs(kernel_partial({2, 0}, z, zeta) + kernel_partial({0, 2}, z, zeta)));
        return worst;
    });
    guarded("kernel bound |j| <= 5", 0.0, [] {
        double excess = 0;
        for (Point z : probe_ring(1.0, 10))
            for (Point zeta : probe_ring(1.0, 6, 2.0))
                for (MultiIndex j : indices_up_to(5)) {
                    if (j.order() == 0 || z == zeta)
                        continue;
                    const int n = j.order();
                    const double bound = factorial(n) / ipow(std::abs(z - zeta), n);
                    excess = std::max(excess, std::abs(kernel_partial(j, z, zeta)) - bound * (1 + 1e-14));
                }
        return std::max(0.0, excess);
    });
    guarded("kernel skew symmetry", 1e-6, [] {
        double worst = 0;
        for (Point z : probe_ring(0.5, 6))
            for (Point zeta : probe_ring(1.0, 4, 2.5))
                for (MultiIndex e : {unit_x, unit_y}) {
                    const double dz = kernel_partial(e, z, zeta);
                    const double dzeta = richardson_difference(
                        [&](Point w) { return kernel_partial({0, 0}, z, w); }, e, zeta, 1e-4);
                    worst = std::max(worst, std::abs(dz + dzeta) / (1 + std::abs(dz)));
                }
        return worst;
    });
    guarded("Taylor recurrence d_zeta P_n[f] = P_{n-1}[d f]", 1e-6, [] {
        std::mt19937_64 rng(20240601);
        double worst = 0;
        for (int trial = 0; trial < 4; ++trial) {
            const ScalarField f = random_polynomial(rng, 5).field();
            for (int n = 1; n <= 4; ++n)
                for (Point z : probe_ring(0.6, 3, 0.2 * trial))
                    for (Point zeta : probe_ring(0.8, 3, 1.0 + trial))
                        for (MultiIndex e : {unit_x, unit_y}) {
                            const TaylorPolynomial P(f, n, z);
                            const double lhs = richardson_difference(P, e, zeta, 1e-3);
                            const double rhs = taylor_poly(f.derivative(e), n - 1, z, zeta);
                            worst = std::max(worst, std::abs(lhs - rhs) / (1 + std::abs(rhs)));
                        }
        }
        return worst;
    });
    guarded("decomposition: triples reassemble the index in either step order", 0.0, [] {
        double bad = 0;
        for (MultiIndex j : indices_up_to(6)) {
            if (j.order() == 0)
                continue;
            for (StepOrder o : {StepOrder::x_first, StepOrder::y_first}) {
                const auto d = decompose(j, o);
                for (const auto& t : d.triples)
                    bad += (t.theta + t.step + t.phi == j) ? 0 : 1;
                bad += (static_cast<int>(d.triples.size()) == j.order() - 1) ? 0 : 1;
            }
        }
        return bad;
    });
    guarded("field partials independent of step order", 1e-12, [] {
        const ScalarField g = fields::gaussian({0.2, 0.1});
        double worst = 0;
        for (Point z : probe_ring(0.8, 5)) {
            const double a = g.derivative(unit_x).derivative(unit_y).partial(unit_y, z);
            const double b = g.derivative(unit_y).derivative(unit_y).partial(unit_x, z);
            const double c = g.partial({1, 2}, z);
            worst = std::max({worst, std::abs(a - c), std::abs(b - c)});
        }
        return worst;
    });
    guarded("Taylor polynomial independent of step order", 1e-9, [] {
        const ScalarField g = fields::gaussian({0.2, 0.1});
        const ScalarField swapped(
            [g](Point z) { return g(z); }, [g](MultiIndex j, Point z) { return g.derivative({0, j.j2}).partial({j.j1, 0}, z); });
        double worst = 0;
        for (Point z : probe_ring(0.6, 4))
            for (Point zeta : probe_ring(0.8, 3, 2.0))
                worst = std::max(worst, std::abs(taylor_poly(g, 4, z, zeta) - taylor_poly(swapped, 4, z, zeta)));
        return worst;
    });
    guarded("disk quadrature polynomial exactness (degree 6)", 1e-12, [] {
        double worst = 0;
        const QuadratureConfig cfg;
        for (MultiIndex a : indices_up_to(6)) {
            const double got = disk_integral([&](Point z) { return monomial(z, a); }, DiskDomain(1.0), cfg);
            double exact = 0;
            if (a.j1 % 2 == 0 && a.j2 % 2 == 0)  // int_0^1 r^{k+1} dr * int cos^a sin^b
                exact = 2.0 * std::tgamma((a.j1 + 1) / 2.0) * std::tgamma((a.j2 + 1) / 2.0)
                        / std::tgamma((a.j1 + a.j2 + 2) / 2.0) / (a.order() + 2);
            worst = std::max(worst, std::abs(got - exact) / std::max(1.0, std::abs(exact)));
        }
        return worst;
    });
    guarded("quadrature determinism", 0.0, [] {
        const auto g = [](Point z) { return std::log(std::abs(z - Point(0.1, 0.2))) * std::cos(z.imag()); };
        const double a = disk_integral(g, DiskDomain(0.8), {}, Point(0.1, 0.2));
        const double b = disk_integral(g, DiskDomain(0.8), {}, Point(0.1, 0.2));
        return a == b ? 0.0 : 1.0;
    });
    guarded("log-singular quadrature error decreases with radial nodes", 0.0, [] {
        double prev = std::numeric_limits<double>::infinity(), increases = 0;
        for (int n : {8, 16, 32, 64}) {
            QuadratureConfig c;
            c.radial_nodes = n;
            const double err =
                std::abs(disk_integral([](Point z) { return std::log(std::abs(z)); }, DiskDomain(1.0), c, Point(0, 0)) + pi / 2);
            increases += err > prev ? 1 : 0;
            prev = err;
        }
        return increases;
    });
    guarded("potential: report value equals area minus boundary sum", 0.0, [] {
        const PotentialProblem p(fields::wave(), 0.8);
        double bad = 0;
        for (MultiIndex j : {MultiIndex(2, 0), MultiIndex(2, 1), MultiIndex(1, 3)}) {
            const auto rep = potential_deriv(p, {0.2, -0.1}, j);
            bad += rep.value == rep.area_term - rep.boundary_sum() ? 0 : 1;
        }
        return bad;
    });
    guarded("potential: trace of Hessian equals f", 1e-3, [] {
        double worst = 0;
        for (const char* name : {"gaussian", "wave"}) {
            const PotentialProblem p(registry::field(name), 0.8);
            for (Point z : probe_ring(0.6, 6)) {
                const double tr = potential_hess(p, z, Axis::x1, Axis::x1) + potential_hess(p, z, Axis::x2, Axis::x2);
                worst = std::max(worst, std::abs(tr - p.f(z)) / std::max(1e-12, std::abs(p.f(z))));
            }
        }
        return worst;
    });
    guarded("potential: higher-order formula vs finite differences", 1e-3, [] {
        const PotentialProblem p(fields::gaussian(), 0.8);
        double worst = 0;
        for (Point z : {Point(0.2, 0.1), Point(-0.3, 0.25)})
            for (MultiIndex j : {MultiIndex(3, 0), MultiIndex(1, 2), MultiIndex(2, 2), MultiIndex(1, 3)}) {
                const double a = potential_deriv(p, z, j).value, b = fd_oracle(p, z, j);
                worst = std::max(worst, std::abs(a - b) / std::abs(b));
            }
        return worst;
    });
    guarded("potential: independence of the extension radius", 1e-6, [] {
        const PotentialProblem p(fields::gaussian(), 0.8);
        double worst = 0;
        for (MultiIndex j : {MultiIndex(3, 0), MultiIndex(2, 1), MultiIndex(2, 2)}) {
            const double a = potential_deriv(p, {0.2, 0.1}, j).value;
            const double b = potential_deriv(p.with_extension(1.25 * p.R), {0.2, 0.1}, j).value;
            worst = std::max(worst, std::abs(a - b) / (1 + std::abs(a)));
        }
        return worst;
    });
    guarded("potential: step ordering invariance", 1e-10, [] {
        const PotentialProblem p(fields::wave(), 0.8);
        double worst = 0;
        for (MultiIndex j : {MultiIndex(2, 1), MultiIndex(1, 3)}) {
            const double a = potential_deriv(p, {0.1, -0.2}, j, StepOrder::x_first).value;
            const double b = potential_deriv(p, {0.1, -0.2}, j, StepOrder::y_first).value;
            worst = std::max(worst, std::abs(a - b) / (1 + std::abs(a)));
        }
        return worst;
    });
    guarded("Green's first identity", 1e-6, [] {
        double worst = 0;
        const ScalarField u = fields::gaussian({0.2, -0.1}), v = fields::wave();
        for (Axis m : {Axis::x1, Axis::x2})
            worst = std::max(worst, std::abs(greens_identity_residual(u, v, m, 0.9)));
        return worst;
    });
    guarded("curvature: mean-value vs Laplacian definition", 1e-3, [] {
        double worst = 0;
        for (const auto& d : {densities::hyperbolic_disk(), densities::exp_x_squared()})
            for (Point z : probe_ring(0.9, 8)) {
                const double a = curvature_laplace(d, z), b = curvature_meanvalue(d, z);
                worst = std::max(worst, std::abs(a - b) / std::abs(a));
            }
        return worst;
    });
    guarded("curvature: reference densities have curvature -4", 1e-6, [] {
        double worst = 0;
        for (const auto& d : {densities::hyperbolic_disk(), densities::hyperbolic_punctured(), densities::maximal(0.5, 1.0)})
            for (Point z : probe_ring(0.9, 8))
                worst = std::max(worst, std::abs(curvature_laplace(d, z) + 4.0));
        return worst;
    });
    guarded("curvature: closed-form log-Laplacians match finite differences", 1e-6, [] {
        double worst = 0;
        for (const auto& d : {densities::hyperbolic_disk(), densities::hyperbolic_punctured(), densities::maximal(0.25, 1.0),
                              densities::exp_x_squared()})
            for (Point z : probe_ring(0.8, 6)) {
                const double a = log_laplacian(d, z, LaplacianSource::closed_form);
                const double b = log_laplacian(d, z, LaplacianSource::numerical);
                worst = std::max(worst, std::abs(a - b) / (1 + std::abs(a)));
            }
        return worst;
    });
    guarded("curvature: pullback under z^2 keeps curvature -4", 1e-3, [] {
        const auto d = pullback_density(densities::hyperbolic_disk(), maps::power(2), DiskDomain(1.0));
        double worst = 0;
        for (Point z : probe_ring(0.9, 8))
            worst = std::max(worst, std::abs(curvature_laplace(d, z, LaplacianSource::numerical) + 4.0));
        return worst;
    });
    guarded("maximality of lambda_{alpha,R} over the test SK family", 0.0, [] {
        double violations = 0;
        for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
            const auto ref = densities::maximal(alpha, 1.0);
            const auto grid = square_grid(1.0, 40, ref.domain);
            std::vector<ConformalDensity> family = {ref.scaled(0.5), ref.scaled(1.0)};
            for (double beta : {-0.5, 0.0, alpha - 0.1, alpha})
                if (beta <= alpha)
                    family.push_back(densities::maximal(beta, 1.0));
            for (const auto& s : family)
                for (Point z : grid)
                    if (s(z) - ref(z) > 1e-12 * (1 + ref(z)))
                        ++violations;
        }
        return violations;
    });
    guarded("monotonicity of lambda_{alpha,R} in alpha", 0.0, [] {
        double violations = 0;
        const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
        for (Point z : square_grid(1.0, 30, DiskDomain(1.0, true)))
            for (int k = 0; k + 1 < 5; ++k)
                if (maximal_density(alphas[k], 1.0, z) > maximal_density(alphas[k + 1], 1.0, z) * (1 + 1e-12))
                    ++violations;
        return violations;
    });
    guarded("Ahlfors: pullbacks of the hyperbolic density stay below it", 0.0, [] {
        const auto hd = densities::hyperbolic_disk();
        const auto grid = square_grid(1.0, 40, hd.domain);
        double violations = 0;
        for (const auto& f : {maps::power(2), maps::mobius({0.3, 0.0}),
                              maps::compose(maps::power(2), maps::mobius({0.3, -0.2}))}) {
            const auto pb = pullback_density(hd, f, DiskDomain(1.0));
            for (Point z : grid)
                if (pb(z) - hd(z) > 1e-12 * (1 + hd(z)))
                    ++violations;
        }
        return violations;
    });
    guarded("Ahlfors: Möbius automorphisms attain equality", 1e-12, [] {
        const auto hd = densities::hyperbolic_disk();
        const auto pb = pullback_density(hd, maps::mobius({0.3, 0.4}), DiskDomain(1.0));
        double worst = 0;
        for (Point z : square_grid(0.7, 20, hd.domain))
            worst = std::max(worst, std::abs(hd(z) - pb(z)) / hd(z));
        return worst;
    });
    guarded("gluing: glued crossing example is SK", 1e-2, [] {
        const auto hd = densities::hyperbolic_disk();
        const auto lam = pullback_density(hd, maps::power(2), DiskDomain(1.0));
        const auto mu = pullback_density(hd, maps::compose(maps::power(2), maps::mobius({0.3, 0.0})), DiskDomain(1.0));
        const auto sigma = glue(lam, mu, {}, 1e-2);
        const auto rep = sk_verify(sigma, square_grid(0.8, 9, DiskDomain(1.0)), 1e-2, CurvatureRoute::mean_value);
        return std::max(0.0, -rep.worst_margin);
    });
    guarded("sub-mean inequality for log-density differences", 0.0, [] {
        const auto u = densities::maximal(0.75, 1.0), v = densities::maximal(0.25, 1.0);
        const auto diff = [&](Point z) { return std::log(u(z)) - std::log(v(z)); };
        double deficit = 0;
        for (Point z : probe_ring(0.8, 8)) {
            if (!(diff(z) > 0))
                continue;
            const double r = 0.25 * std::min(std::abs(z), 1.0 - std::abs(z));
            deficit = std::max(deficit, -sub_mean_gap(diff, z, r));
        }
        return deficit;
    });
    guarded("order recovery", 0.02, [] {
        double worst = 0;
        for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
            const auto est = order_of_density(densities::maximal(alpha, 1.0), dyadic_radii(4, 20));
            worst = std::max(worst, std::abs(est.alpha - alpha) + (est.reliable ? 0.0 : 1.0) + (est.cusp_flag ? 1.0 : 0.0));
        }
        const auto cusp = order_of_density(densities::maximal(1.0, 1.0), dyadic_radii(4, 20));
        return cusp.cusp_flag ? worst : 1.0;
    });
    guarded("remainder derivative decay exponents", 0.15, [] {
        double worst = 0;
        for (double alpha : {0.5, 0.9}) {
            const double slope = asymptotic_slope(log_density_field(densities::maximal(alpha, 1.0)), alpha, 3, dyadic_radii(4, 12));
            worst = std::max(worst, (2 - 2 * alpha - 3) - slope);
        }
        return std::max(0.0, worst);
    });
    guarded("curvature equation residual of log lambda_{alpha,1}", 1e-6, [] {
        double worst = 0;
        for (double alpha : {0.5, 0.9}) {
            const ScalarField u = log_density_field(densities::maximal(alpha, 1.0));
            for (Point z : probe_ring(0.8, 5))
                worst = std::max(worst, std::abs(liouville_residual(u, [](Point) { return -4.0; }, z)));
        }
        return worst;
    });
    guarded("holomorphic map derivatives", 1e-6, [] {
        double worst = 0;
        for (const auto& f : {maps::power(2), maps::mobius({0.3, 0.1}), maps::compose(maps::power(3), maps::mobius({-0.2, 0.0}))})
            for (Point w : probe_ring(0.8, 6)) {
                const double h = 1e-5;
                const Point fd = (f(w + h) - f(w - h)) / (2 * h);
                worst = std::max(worst, std::abs(fd - f.deriv(w)));
            }
        return worst;
    });
    return out;
}

}  // namespace skpot
