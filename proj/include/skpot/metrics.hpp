#pragma once

#include <algorithm>
#include <cstdio>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "density.hpp"
#include "finite_difference.hpp"
#include "quadrature.hpp"
#include "scalar_field.hpp"

namespace skpot {

namespace detail {

inline double positive_density(const ConformalDensity& d, Point z)
{
    if (!d.contains(z))
        throw Error("point outside the density's domain");
    const double lam = d(z);
    if (lam == 0.0)
        throw Error("curvature undefined at zero density");
    if (!(lam > 0.0) || !std::isfinite(lam))
        throw Error("density must be positive and finite");
    return lam;
}

/// Finite-difference step for Laplacians of log lambda, scaled to the distance
/// from z to the domain boundary.
inline double laplacian_step(const ConformalDensity& d, Point z)
{
    return 1e-3 * std::min(1.0, d.domain.clearance(z));
}

}  // namespace detail

enum class LaplacianSource { automatic, closed_form, numerical };

/// Delta log lambda(z), from the closed form when available.
inline double log_laplacian(const ConformalDensity& d, Point z, LaplacianSource src = LaplacianSource::automatic)
{
    const bool closed = src == LaplacianSource::closed_form
                        || (src == LaplacianSource::automatic && d.has_closed_form());
    if (closed) {
        if (!d.has_closed_form())
            throw Error("density has no closed-form log-Laplacian");
        return d.log_laplacian(z);
    }
    return numerical_laplacian([&](Point w) { return std::log(d(w)); }, z, detail::laplacian_step(d, z));
}

/// Gaussian curvature -Delta log lambda / lambda^2 of a C^2 density.
inline double curvature_laplace(const ConformalDensity& d, Point z, LaplacianSource src = LaplacianSource::automatic)
{
    const double lam = detail::positive_density(d, z);
    return -log_laplacian(d, z, src) / (lam * lam);
}

/// Radii clearance(z) * 2^{-4..-7} used by the mean-value curvature by default.
inline std::vector<double> default_mean_value_radii(const ConformalDensity& d, Point z)
{
    const double c = std::min(1.0, d.domain.clearance(z));
    return {c / 16, c / 32, c / 64, c / 128};
}

/// Generalized curvature from circumferential means: for each radius r,
/// (4/r^2)(mean of log lambda on |w - z| = r - log lambda(z)), extrapolated to
/// r -> 0 and divided by -lambda(z)^2.
inline LimitEstimate mean_value_limit(const ConformalDensity& d, Point z, const std::vector<double>& radii,
                                      const QuadratureConfig& cfg = {})
{
    const double u0 = std::log(detail::positive_density(d, z));
    std::vector<std::pair<double, double>> samples;
    for (double r : radii) {
        if (!(r < d.domain.clearance(z)))
            throw Error("mean-value circle leaves the density's domain");
        const double mean = circle_mean([&](Point w) { return std::log(d(w)); }, z, r, cfg);
        samples.emplace_back(r, 4.0 / (r * r) * (mean - u0));
    }
    return shrinking_limit(samples);
}

inline double curvature_meanvalue(const ConformalDensity& d, Point z, const std::vector<double>& radii,
                                  const QuadratureConfig& cfg = {})
{
    const double lam = detail::positive_density(d, z);
    return -mean_value_limit(d, z, radii, cfg).value / (lam * lam);
}

/// Default radii, shrunk by 8 (at most `max_refinements` times) while the
/// samples do not follow c0 + c1 r^2; that happens when the circles reach a
/// point where log lambda is not C^2, e.g. the crossing set of a glued density.
inline double curvature_meanvalue(const ConformalDensity& d, Point z, const QuadratureConfig& cfg = {},
                                  int max_refinements = 4)
{
    const double lam = detail::positive_density(d, z);
    std::vector<double> radii = default_mean_value_radii(d, z);
    LimitEstimate lim = mean_value_limit(d, z, radii, cfg);
    for (int k = 0; k < max_refinements && lim.fit_residual > 1e-4 * (1.0 + std::abs(lim.value)); ++k) {
        for (double& r : radii)
            r /= 8.0;
        lim = mean_value_limit(d, z, radii, cfg);
    }
    return -lim.value / (lam * lam);
}

// ---------------------------------------------------------------------------
// Singularity order

struct OrderEstimate {
    double alpha = 0.0;
    double fit_quality = 0.0;  ///< R^2 with a variance floor; 1 is a perfect line
    std::vector<double> radii;
    std::vector<double> max_on_circle;  ///< M_u(r) for each radius
    bool cusp_flag = false;
    bool reliable = false;  ///< fit_quality >= 0.999
};

struct OrderOptions {
    int angular_samples = 720;
    /// Spread allowed in M_u(r) + log r + log log(1/r) for a cusp.
    double cusp_tolerance = 0.05;
    /// Residual scale (natural-log units) below which a flat profile counts as explained.
    double variance_floor = 0.1;
};

/// Radii 2^{-k}, k = first..last.
inline std::vector<double> dyadic_radii(int first, int last)
{
    std::vector<double> r;
    for (int k = first; k <= last; ++k)
        r.push_back(std::ldexp(1.0, -k));
    return r;
}

namespace detail {
inline double fit_quality(const LineFit& fit, std::size_t n, double floor)
{
    const double denom = std::max(fit.ss_tot, static_cast<double>(n) * floor * floor);
    return std::clamp(1.0 - fit.ss_res / denom, 0.0, 1.0);
}
}  // namespace detail

/// Order alpha(u) = lim M_u(r) / log(1/r), estimated by regressing the sampled
/// circle maxima against log(1/r). A cusp (u = -log|z| - log log(1/|z|) + O(1))
/// is detected when M_u(r) + log r + log log(1/r) stays flat; alpha is then 1.
template <class U>
OrderEstimate order_of(const U& u, const std::vector<double>& radii, const OrderOptions& opt = {})
{
    if (radii.size() < 3)
        throw Error("order estimate needs at least three radii");
    OrderEstimate est;
    est.radii = radii;
    std::vector<double> x, m, loglog;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        if (!(r > 0.0 && r < 1.0) || (i > 0 && !(r < radii[i - 1])))
            throw Error("radii must decrease within (0, 1)");
        double best = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < opt.angular_samples; ++k) {
            const double th = two_pi * k / opt.angular_samples;
            const double v = u(r * Point(std::cos(th), std::sin(th)));
            if (!std::isfinite(v))
                throw Error("non-finite sample of u on |z| = " + std::to_string(r));
            best = std::max(best, v);
        }
        est.max_on_circle.push_back(best);
        x.push_back(std::log(1.0 / r));
        m.push_back(best);
        loglog.push_back(std::log(std::log(1.0 / r)));
    }

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = m[i] - x[i] + loglog[i];
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    est.cusp_flag = hi - lo <= opt.cusp_tolerance;

    if (est.cusp_flag) {
        std::vector<double> shifted(m);
        for (std::size_t i = 0; i < m.size(); ++i)
            shifted[i] += loglog[i];
        const LineFit fit = fit_line(x, shifted);
        est.alpha = 1.0;
        est.fit_quality = detail::fit_quality(fit, x.size(), opt.variance_floor);
    } else {
        const LineFit fit = fit_line(x, m);
        est.alpha = fit.slope;
        est.fit_quality = detail::fit_quality(fit, x.size(), opt.variance_floor);
    }
    est.reliable = est.fit_quality >= 0.999;
    return est;
}

template <class U>
OrderEstimate order_of(const U& u)
{
    return order_of(u, dyadic_radii(4, 20));
}

inline OrderEstimate order_of_density(const ConformalDensity& d, const std::vector<double>& radii,
                                      const OrderOptions& opt = {})
{
    return order_of([&](Point z) { return std::log(d(z)); }, radii, opt);
}

// ---------------------------------------------------------------------------
// SK verification, gluing, comparison

struct SkReport {
    bool passed = true;
    double worst_margin = std::numeric_limits<double>::infinity();  ///< min of -4 - curvature
    Point worst_point{};
    std::size_t checked = 0;
    std::size_t skipped = 0;  ///< points with lambda = 0
    std::vector<Point> failures;
};

enum class CurvatureRoute { automatic, laplace, mean_value };

/// Checks curvature <= -4 + tol at every grid point with lambda > 0.
inline SkReport sk_verify(const ConformalDensity& d, const std::vector<Point>& grid, double tol,
                          CurvatureRoute route = CurvatureRoute::automatic, const QuadratureConfig& cfg = {})
{
    SkReport rep;
    const bool closed = route == CurvatureRoute::laplace
                        || (route == CurvatureRoute::automatic && d.has_closed_form());
    for (Point z : grid) {
        if (d(z) == 0.0) {
            ++rep.skipped;
            continue;
        }
        const double kappa = closed ? curvature_laplace(d, z) : curvature_meanvalue(d, z, cfg);
        const double margin = -4.0 - kappa;
        ++rep.checked;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_point = z;
        }
        if (margin < -tol) {
            rep.passed = false;
            rep.failures.push_back(z);
        }
    }
    return rep;
}

/// Raised when the gluing condition limsup mu <= lambda fails at a probe.
class GlueError : public Error {
public:
    GlueError(Point probe, double mu_limsup, double lambda_value)
        : Error(describe(probe, mu_limsup, lambda_value)), probe_(probe), mu_(mu_limsup), lambda_(lambda_value)
    {
    }
    Point probe() const { return probe_; }
    double excess() const { return mu_ - lambda_; }
    double mu_limsup() const { return mu_; }
    double lambda_value() const { return lambda_; }

private:
    static std::string describe(Point p, double mu, double lam)
    {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "gluing condition violated at probe (%.6g, %.6g): limsup mu = %.6g exceeds lambda = %.6g by %.6g",
                      p.real(), p.imag(), mu, lam, mu - lam);
        return buf;
    }
    Point probe_;
    double mu_, lambda_;
};

struct GlueOptions {
    int sequences = 8;
    int points_per_sequence = 16;
    /// Length of the first step into U, relative to the radius of U.
    double reach = 1e-3;
};

/// limsup of mu at the boundary point xi, approximated by the maximum over
/// `sequences` rays into U, each sampled at reach * 2^{-m}, m = 0..points-1.
inline double boundary_limsup(const ConformalDensity& mu, Point xi, const GlueOptions& opt = {})
{
    const double rU = mu.domain.radius;
    const double a = std::abs(xi);
    // Inward normal of the circle |z| = rU; around the puncture every direction points inward.
    const bool at_puncture = a < 0.5 * rU;
    const Point normal = at_puncture ? Point(1, 0) : -xi / a;
    const double spread = at_puncture ? two_pi : pi;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < opt.sequences; ++k) {
        const double phi = -0.5 * spread + spread * (k + 0.5) / opt.sequences;
        const Point dir = normal * Point(std::cos(phi), std::sin(phi));
        for (int m = 0; m < opt.points_per_sequence; ++m) {
            const Point z = xi + opt.reach * rU * std::ldexp(1.0, -m) * dir;
            if (mu.contains(z))
                best = std::max(best, mu(z));
        }
    }
    if (!std::isfinite(best))
        throw Error("no inward samples of mu near the probe point");
    return best;
}

/// sigma = max(lambda, mu) on U and lambda on G \ U, after checking the gluing
/// condition at each probe point of dU within G.
inline ConformalDensity glue(const ConformalDensity& lam, const ConformalDensity& mu,
                             const std::vector<Point>& boundary_probe, double tol, const GlueOptions& opt = {})
{
    if (mu.domain.radius > lam.domain.radius)
        throw Error("U must be a subdomain of G");
    for (Point xi : boundary_probe) {
        if (!lam.contains(xi))
            continue;
        const double limsup = boundary_limsup(mu, xi, opt);
        const double target = lam(xi);
        if (limsup > target + tol)
            throw GlueError(xi, limsup, target);
    }
    ConformalDensity sigma;
    sigma.domain = lam.domain;
    sigma.name = "glue(" + lam.name + "," + mu.name + ")";
    sigma.lambda = [lam, mu](Point z) {
        const double l = lam(z);
        return mu.contains(z) ? std::max(l, mu(z)) : l;
    };
    return sigma;
}

/// min over the grid of reference - sk (points outside either domain are skipped).
inline double ahlfors_margin(const ConformalDensity& sk, const ConformalDensity& reference,
                             const std::vector<Point>& grid)
{
    double m = std::numeric_limits<double>::infinity();
    for (Point z : grid)
        if (sk.contains(z) && reference.contains(z))
            m = std::min(m, reference(z) - sk(z));
    return m;
}

// ---------------------------------------------------------------------------
// Curvature equation and remainder asymptotics

/// Delta u(z) + kappa(z) exp(2 u(z)).
template <class K>
double liouville_residual(const ScalarField& u, const K& kappa, Point z)
{
    const double lap = u.partial({2, 0}, z) + u.partial({0, 2}, z);
    return lap + kappa(z) * std::exp(2.0 * u(z));
}

/// v = u + alpha log|z| for alpha < 1, w = u + log|z| + log log(1/|z|) for alpha = 1.
inline double remainder_field(const ScalarField& u, double alpha, Point z)
{
    if (z == Point(0, 0))
        throw Error("remainder undefined at z = 0");
    if (alpha > 1.0)
        throw Error("singularity order must satisfy alpha <= 1");
    const double a = std::abs(z);
    if (alpha < 1.0)
        return u(z) + alpha * std::log(a);
    return u(z) + std::log(a) + std::log(std::log(1.0 / a));
}

struct AsymptoticProfile {
    std::vector<double> radii;
    std::vector<double> magnitudes;  ///< |d^n v / dz^n| on the ray
    double slope = 0.0;              ///< d log|d^n v| / d log|z|
};

struct SlopeOptions {
    double ray_angle = 0.3;       ///< fixed ray arg z
    double relative_step = 1.0 / 16;  ///< finite-difference step / |z|
    double noise_factor = 1e3;    ///< required signal-to-roundoff ratio
};

/// |d^n v / dz^n| (Wirtinger derivative) of the remainder along a ray, with
/// d/dz = (d1 - i d2) / 2 expanded into finite-difference mixed partials.
inline AsymptoticProfile asymptotic_profile(const ScalarField& u, double alpha, int n,
                                            const std::vector<double>& radii, const SlopeOptions& opt = {})
{
    if (n < 1)
        throw Error("derivative order must be at least 1");
    if (radii.size() < 3)
        throw Error("asymptotic slope needs at least three radii");
    const Point dir(std::cos(opt.ray_angle), std::sin(opt.ray_angle));
    const auto v = [&](Point z) { return remainder_field(u, alpha, z); };
    AsymptoticProfile prof;
    std::vector<double> lx, ly;
    static constexpr Point minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (double r : radii) {
        const Point z = r * dir;
        const double h = opt.relative_step * r;
        Point acc(0, 0);
        double vmax = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double dk = richardson_difference(v, MultiIndex(n - k, k), z, h);
            acc += binomial(n, k) * minus_i_pow[k % 4] * dk;
        }
        acc /= ipow(2.0, n);
        // v cancels u against the logarithmic terms, so round-off scales with those.
        for (int s = -n; s <= n; ++s) {
            const Point w = z + 0.5 * s * h;
            vmax = std::max(vmax, std::abs(u(w)) + std::abs(std::log(std::abs(w))) + std::abs(v(w)));
        }
        const double noise = std::numeric_limits<double>::epsilon() * (vmax + 1e-300) * ipow(2.0, 2 * n)
                             / ipow(0.5 * h, n);
        const double mag = std::abs(acc);
        if (!(mag > opt.noise_factor * noise))
            throw Error("signal lost: |d^n v| below the round-off floor at |z| = " + std::to_string(r));
        prof.radii.push_back(r);
        prof.magnitudes.push_back(mag);
        lx.push_back(std::log(r));
        ly.push_back(std::log(mag));
    }
    prof.slope = fit_line(lx, ly).slope;
    return prof;
}

inline double asymptotic_slope(const ScalarField& u, double alpha, int n, const std::vector<double>& radii,
                               const SlopeOptions& opt = {})
{
    return asymptotic_profile(u, alpha, n, radii, opt).slope;
}

/// Circumferential mean of g on |w - z| = r minus g(z); non-negative for
/// subharmonic g.
template <class G>
double sub_mean_gap(const G& g, Point z, double r, const QuadratureConfig& cfg = {})
{
    return circle_mean(g, z, r, cfg) - g(z);
}

/// log lambda as a ScalarField (finite-difference partials).
inline ScalarField log_density_field(const ConformalDensity& d)
{
    return ScalarField([d](Point z) { return std::log(d(z)); }, {}, 2, 1.0);
}

}  // namespace skpot
