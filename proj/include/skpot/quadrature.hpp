#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "common.hpp"

namespace skpot {

/// Origin-centred disk |z| < radius, optionally without the origin.
struct DiskDomain {
    double radius = 1.0;
    bool punctured = false;

    DiskDomain() = default;
    DiskDomain(double r, bool punct = false) : radius(r), punctured(punct)
    {
        if (!(radius > 0.0))
            throw Error("disk radius must be positive");
    }

    bool contains(Point z) const
    {
        const double a = std::abs(z);
        return a < radius && !(punctured && a == 0.0);
    }

    /// Distance from z to the complement (the circle, and the origin when punctured).
    double clearance(Point z) const
    {
        const double a = std::abs(z);
        const double d = radius - a;
        return punctured ? std::min(d, a) : d;
    }
};

struct QuadratureConfig {
    int radial_nodes = 64;
    int angular_nodes = 256;
    /// Radius of the polar patch around a singular point; unset means disk radius / 4.
    std::optional<double> singular_split_radius;
    double target_rel_tol = 1e-8;

    void validate() const
    {
        if (radial_nodes < 8 || angular_nodes < 8)
            throw Error("quadrature node counts must be at least 8");
        if (!(target_rel_tol > 0.0 && target_rel_tol <= 1e-2))
            throw Error("target_rel_tol must lie in (0, 1e-2]");
        if (singular_split_radius && !(*singular_split_radius > 0.0))
            throw Error("singular_split_radius must be positive");
    }

    double split_for(double disk_radius) const
    {
        return singular_split_radius.value_or(0.25 * disk_radius);
    }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule compute_gauss_legendre(int n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

inline const GaussRule& gauss_legendre(int n)
{
    thread_local std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

namespace detail {

inline double checked(double v, Point where)
{
    if (!std::isfinite(v))
        throw Error("integrand not finite at (" + std::to_string(where.real()) + ", "
                    + std::to_string(where.imag()) + ")");
    return v;
}

/// Integral of g(center + rho u) rho d rho over [a, b] along the unit direction u.
template <class G>
double radial_segment(const G& g, Point center, Point u, double a, double b, const GaussRule& rule)
{
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    CompensatedSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double rho = mid + half * rule.nodes[i];
        const Point zeta = center + rho * u;
        acc += rule.weights[i] * rho * checked(g(zeta), zeta);
    }
    return half * acc.value();
}

}  // namespace detail

/// Area integral of g over the disk: Gauss-Legendre in radius times the
/// trapezoid rule in angle. With a singular point p inside the disk the polar
/// coordinates are centred at p instead, each ray running to the circle and
/// split at the patch radius; the rho Jacobian absorbs rho^{-1} and log rho
/// behaviour at p.
template <class G>
double disk_integral(const G& g, const DiskDomain& disk, const QuadratureConfig& cfg,
                     std::optional<Point> singular_at = std::nullopt)
{
    cfg.validate();
    const GaussRule& rule = gauss_legendre(cfg.radial_nodes);
    const int m = cfg.angular_nodes;
    const double R = disk.radius;
    CompensatedSum acc;
    if (singular_at && std::abs(*singular_at) < R) {
        const Point p = *singular_at;
        // Patch radius shrinks smoothly as p nears the rim (at most (R - |p|)/2),
        // so the rule varies smoothly with p.
        const double s = std::min(cfg.split_for(R), 0.25 * R) * (1.0 - std::norm(p) / (R * R));
        const double c = R * R - std::norm(p);
        for (int k = 0; k < m; ++k) {
            const double th = two_pi * k / m;
            const Point u(std::cos(th), std::sin(th));
            const double pu = (std::conj(u) * p).real();
            const double rho_max = -pu + std::sqrt(pu * pu + c);
            acc += detail::radial_segment(g, p, u, 0.0, s, rule);
            acc += detail::radial_segment(g, p, u, s, rho_max, rule);
        }
    } else {
        for (int k = 0; k < m; ++k) {
            const double th = two_pi * k / m;
            acc += detail::radial_segment(g, Point(0, 0), Point(std::cos(th), std::sin(th)), 0.0, R, rule);
        }
    }
    return two_pi / m * acc.value();
}

/// Integral of g over inner < |zeta| < outer (g smooth there).
template <class G>
double annulus_integral(const G& g, double inner, double outer, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (!(0.0 <= inner && inner < outer))
        throw Error("annulus needs 0 <= inner < outer");
    const GaussRule& rule = gauss_legendre(cfg.radial_nodes);
    const int m = cfg.angular_nodes;
    CompensatedSum acc;
    for (int k = 0; k < m; ++k) {
        const double th = two_pi * k / m;
        acc += detail::radial_segment(g, Point(0, 0), Point(std::cos(th), std::sin(th)), inner, outer, rule);
    }
    return two_pi / m * acc.value();
}

/// Contour integral of g |d zeta| over |zeta - center| = radius by the
/// trapezoid rule on cfg.angular_nodes equispaced angles.
template <class G>
double circle_integral(const G& g, double radius, const QuadratureConfig& cfg, Point center = {0, 0})
{
    cfg.validate();
    if (!(radius > 0.0))
        throw Error("circle radius must be positive");
    const int m = cfg.angular_nodes;
    CompensatedSum acc;
    for (int k = 0; k < m; ++k) {
        const double th = two_pi * k / m;
        const Point zeta = center + radius * Point(std::cos(th), std::sin(th));
        acc += detail::checked(g(zeta), zeta);
    }
    return two_pi * radius / m * acc.value();
}

/// Average of g over the circle |zeta - center| = radius.
template <class G>
double circle_mean(const G& g, Point center, double radius, const QuadratureConfig& cfg)
{
    return circle_integral(g, radius, cfg, center) / (two_pi * radius);
}

struct LimitEstimate {
    double value = 0.0;
    double slope = 0.0;  ///< coefficient of r^2
    std::vector<double> radii_used;
    double fit_residual = 0.0;  ///< root of the residual sum of squares
};

/// Extrapolates value(r) -> r = 0 by a least-squares fit value ~ c0 + c1 r^2.
inline LimitEstimate shrinking_limit(const std::vector<std::pair<double, double>>& samples)
{
    if (samples.size() < 4)
        throw Error("insufficient samples");
    std::vector<double> r2, v;
    LimitEstimate est;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [r, val] = samples[i];
        if (!(r > 0.0) || !std::isfinite(val))
            throw Error("shrinking limit needs positive radii and finite values");
        if (i > 0 && !(r < samples[i - 1].first))
            throw Error("radii must be strictly decreasing");
        est.radii_used.push_back(r);
        r2.push_back(r * r);
        v.push_back(val);
    }
    const LineFit fit = fit_line(r2, v);
    est.value = fit.intercept;
    est.slope = fit.slope;
    est.fit_residual = std::sqrt(fit.ss_res);
    return est;
}

}  // namespace skpot
