#pragma once

#include <limits>

#include "common.hpp"
#include "multi_index.hpp"

namespace skpot {

/// Tensor-product central difference for d1^j1 d2^j2 g(z): the order-k stencil
/// sum_i (-1)^i C(k,i) g(x + (k/2 - i) h) / h^k in each coordinate. O(h^2).
template <class F>
double central_difference(const F& g, MultiIndex j, Point z, double h)
{
    if (j.order() == 0)
        return g(z);
    CompensatedSum acc;
    for (int a = 0; a <= j.j1; ++a) {
        const double ca = binomial(j.j1, a) * ((a % 2) ? -1.0 : 1.0);
        const double dx = (0.5 * j.j1 - a) * h;
        for (int b = 0; b <= j.j2; ++b) {
            const double cb = binomial(j.j2, b) * ((b % 2) ? -1.0 : 1.0);
            const double dy = (0.5 * j.j2 - b) * h;
            acc += ca * cb * g(z + Point(dx, dy));
        }
    }
    return acc.value() / ipow(h, j.order());
}

/// One Richardson step over h and h/2, cancelling the h^2 error term.
template <class F>
double richardson_difference(const F& g, MultiIndex j, Point z, double h)
{
    if (j.order() == 0)
        return g(z);
    const double coarse = central_difference(g, j, z, h);
    const double fine = central_difference(g, j, z, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

/// Step used by the finite-difference fallback of ScalarField: 1e-4 (1 + |z|)
/// up to second order, growing with the order above that to keep round-off
/// below the O(h^4) truncation.
inline double default_partial_step(MultiIndex j, Point z)
{
    const double scale = 1.0 + std::abs(z);
    if (j.order() <= 2)
        return 1e-4 * scale;
    return scale * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (j.order() + 3));
}

/// Five-point Laplacian with one Richardson step.
template <class F>
double numerical_laplacian(const F& g, Point z, double h)
{
    const auto five_point = [&](double s) {
        const double c = g(z);
        return (g(z + s) + g(z - s) + g(z + Point(0, s)) + g(z - Point(0, s)) - 4.0 * c) / (s * s);
    };
    return (4.0 * five_point(0.5 * h) - five_point(h)) / 3.0;
}

}  // namespace skpot
