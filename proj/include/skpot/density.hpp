#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "common.hpp"
#include "quadrature.hpp"

namespace skpot {

/// Conformal metric lambda(z)|dz| on a (possibly punctured) disk.
struct ConformalDensity {
    using Fn = std::function<double(Point)>;

    Fn lambda;
    Fn log_laplacian;  ///< closed-form Laplacian of log lambda; empty when unknown
    DiskDomain domain;
    std::optional<double> declared_order;  ///< singularity order at the origin
    std::string name;

    double operator()(Point z) const { return lambda(z); }
    bool contains(Point z) const { return domain.contains(z); }
    bool has_closed_form() const { return static_cast<bool>(log_laplacian); }

    /// c * lambda; curvature scales by 1 / c^2.
    ConformalDensity scaled(double c) const
    {
        ConformalDensity d = *this;
        auto base = lambda;
        d.lambda = [base, c](Point z) { return c * base(z); };
        d.name = std::to_string(c) + "*" + name;
        return d;
    }

    /// The same density on a smaller domain.
    ConformalDensity restricted(DiskDomain sub) const
    {
        if (sub.radius > domain.radius)
            throw Error("restriction must be to a subdomain");
        ConformalDensity d = *this;
        d.domain = sub;
        return d;
    }
};

/// Holomorphic map given by its values and complex derivative.
struct HolomorphicMap {
    std::function<Point(Point)> eval;
    std::function<Point(Point)> deriv;
    std::string name;

    Point operator()(Point w) const { return eval(w); }
};

namespace maps {

inline HolomorphicMap identity()
{
    return {[](Point w) { return w; }, [](Point) { return Point(1, 0); }, "id"};
}

/// w -> w^k.
inline HolomorphicMap power(int k)
{
    if (k < 1)
        throw Error("power map needs k >= 1");
    return {[k](Point w) { return std::pow(w, k); },
            [k](Point w) { return static_cast<double>(k) * (k == 1 ? Point(1, 0) : std::pow(w, k - 1)); },
            "z^" + std::to_string(k)};
}

/// Disk automorphism w -> (w - a) / (1 - conj(a) w), |a| < 1.
inline HolomorphicMap mobius(Point a)
{
    if (!(std::abs(a) < 1.0))
        throw Error("Möbius parameter must lie in the unit disk");
    return {[a](Point w) { return (w - a) / (1.0 - std::conj(a) * w); },
            [a](Point w) {
                const Point d = 1.0 - std::conj(a) * w;
                return (1.0 - std::norm(a)) / (d * d);
            },
            "mobius(" + std::to_string(a.real()) + ")"};
}

/// outer after inner.
inline HolomorphicMap compose(HolomorphicMap outer, HolomorphicMap inner)
{
    std::string name = inner.name + ">" + outer.name;
    auto ev = [outer, inner](Point w) { return outer.eval(inner.eval(w)); };
    auto dv = [outer, inner](Point w) { return outer.deriv(inner.eval(w)) * inner.deriv(w); };
    return {std::move(ev), std::move(dv), std::move(name)};
}

}  // namespace maps

/// lambda(f(w)) |f'(w)|.
inline double pullback(const ConformalDensity& d, const HolomorphicMap& f, Point w)
{
    const Point img = f(w);
    if (!d.contains(img))
        throw Error("image escapes metric domain");
    return d(img) * std::abs(f.deriv(w));
}

/// The pullback metric on `source`. Off the critical points of f,
/// Delta log(f^* lambda)(w) = |f'(w)|^2 (Delta log lambda)(f(w)).
inline ConformalDensity pullback_density(const ConformalDensity& d, const HolomorphicMap& f, DiskDomain source)
{
    ConformalDensity out;
    out.domain = source;
    out.name = "pullback:" + f.name + ":" + d.name;
    out.lambda = [d, f](Point w) { return pullback(d, f, w); };
    if (d.log_laplacian)
        out.log_laplacian = [d, f](Point w) { return std::norm(f.deriv(w)) * d.log_laplacian(f(w)); };
    return out;
}

enum class ReferenceKind { disk, punctured, maximal };

namespace detail {

inline void require_nonzero(Point z)
{
    if (z == Point(0, 0))
        throw Error("density undefined at the puncture z = 0");
}

}  // namespace detail

/// Hyperbolic density of the unit disk, 1 / (1 - |z|^2).
inline double hyperbolic_disk_density(Point z)
{
    return 1.0 / (1.0 - std::norm(z));
}

/// Hyperbolic density of the punctured unit disk, 1 / (2|z| log(1/|z|)).
inline double hyperbolic_punctured_density(Point z)
{
    detail::require_nonzero(z);
    const double a = std::abs(z);
    return 1.0 / (2.0 * a * std::log(1.0 / a));
}

/// Maximal SK density on 0 < |z| < R with singularity order alpha <= 1:
/// (1-alpha) / (2|z| sinh((1-alpha) log(R/|z|))) for alpha < 1 and its
/// alpha -> 1 limit 1 / (2|z| log(R/|z|)).
inline double maximal_density(double alpha, double R, Point z)
{
    if (alpha > 1.0)
        throw Error("singularity order must satisfy alpha <= 1");
    if (!(R > 0.0))
        throw Error("maximal density needs R > 0");
    detail::require_nonzero(z);
    const double a = std::abs(z);
    if (!(a < R))
        throw Error("point outside the punctured disk D_R*");
    const double L = std::log(R / a);
    if (alpha == 1.0)
        return 1.0 / (2.0 * a * L);
    const double c = 1.0 - alpha;
    return c / (2.0 * a * std::sinh(c * L));
}

struct ReferenceParams {
    double alpha = 0.0;
    double R = 1.0;
};

inline double reference_density(ReferenceKind kind, ReferenceParams params, Point z)
{
    switch (kind) {
    case ReferenceKind::disk:
        if (!(std::abs(z) < 1.0))
            throw Error("point outside the unit disk");
        return hyperbolic_disk_density(z);
    case ReferenceKind::punctured:
        if (!(std::abs(z) < 1.0))
            throw Error("point outside the unit disk");
        return hyperbolic_punctured_density(z);
    case ReferenceKind::maximal:
        return maximal_density(params.alpha, params.R, z);
    }
    throw Error("unknown reference kind");
}

namespace densities {

inline ConformalDensity hyperbolic_disk()
{
    ConformalDensity d;
    d.lambda = hyperbolic_disk_density;
    d.log_laplacian = [](Point z) {
        const double q = 1.0 - std::norm(z);
        return 4.0 / (q * q);
    };
    d.domain = DiskDomain(1.0);
    d.name = "hyperbolic-disk";
    return d;
}

inline ConformalDensity hyperbolic_punctured()
{
    ConformalDensity d;
    d.lambda = hyperbolic_punctured_density;
    d.log_laplacian = [](Point z) {
        const double a = std::abs(z), L = std::log(1.0 / a);
        return 1.0 / (a * a * L * L);
    };
    d.domain = DiskDomain(1.0, true);
    d.declared_order = 1.0;
    d.name = "hyperbolic-punctured";
    return d;
}

/// lambda_{alpha,R}. For radial log lambda = -log|z| - log sinh(c L) + const,
/// Delta log lambda = c^2 / (|z|^2 sinh^2(c L)), c = 1 - alpha, L = log(R/|z|);
/// at alpha = 1 it is 1 / (|z|^2 L^2).
inline ConformalDensity maximal(double alpha, double R = 1.0)
{
    if (alpha > 1.0)
        throw Error("singularity order must satisfy alpha <= 1");
    ConformalDensity d;
    d.lambda = [alpha, R](Point z) { return maximal_density(alpha, R, z); };
    d.log_laplacian = [alpha, R](Point z) {
        const double a = std::abs(z), L = std::log(R / a);
        if (alpha == 1.0)
            return 1.0 / (a * a * L * L);
        const double c = 1.0 - alpha, s = std::sinh(c * L);
        return c * c / (a * a * s * s);
    };
    d.domain = DiskDomain(R, true);
    d.declared_order = alpha;
    d.name = "maximal:alpha=" + std::to_string(alpha) + ",R=" + std::to_string(R);
    return d;
}

/// exp(x1^2) on the unit disk; Delta log lambda = 2.
inline ConformalDensity exp_x_squared()
{
    ConformalDensity d;
    d.lambda = [](Point z) { return std::exp(z.real() * z.real()); };
    d.log_laplacian = [](Point) { return 2.0; };
    d.domain = DiskDomain(1.0);
    d.name = "exp-x2";
    return d;
}

}  // namespace densities

}  // namespace skpot
