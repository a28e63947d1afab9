#pragma once

#include "common.hpp"
#include "multi_index.hpp"

namespace skpot {

/// d^j_z log|z - zeta| in closed form. With w = z - zeta, log|w| = Re log w and
/// d1 = d/dw, d2 = i d/dw on holomorphic functions, so for n = |j| >= 1
///   d^j log|w| = Re( i^j2 (-1)^{n-1} (n-1)! / w^n ),
/// which is bounded by n! / |w|^n.
inline double kernel_partial(MultiIndex j, Point z, Point zeta)
{
    const Point w = z - zeta;
    if (w == Point(0, 0))
        throw Error("kernel singularity");
    const int n = j.order();
    if (n == 0)
        return std::log(std::abs(w));
    static constexpr Point i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double mag = ((n - 1) % 2 ? -1.0 : 1.0) * factorial(n - 1);
    Point inv = 1.0 / w;
    Point p = inv;
    for (int k = 1; k < n; ++k)
        p *= inv;
    return mag * (i_pow[j.j2 % 4] * p).real();
}

}  // namespace skpot
