#pragma once

#include <compare>
#include <string>
#include <vector>

#include "common.hpp"

namespace skpot {

/// Exponent pair (j1, j2) of the mixed partial d1^j1 d2^j2.
struct MultiIndex {
    int j1 = 0;
    int j2 = 0;

    constexpr MultiIndex() = default;
    constexpr MultiIndex(int a, int b) : j1(a), j2(b)
    {
        if (a < 0 || b < 0)
            throw Error("multi-index entries must be non-negative");
    }

    constexpr int order() const { return j1 + j2; }
    double factorial() const { return skpot::factorial(j1) * skpot::factorial(j2); }

    friend constexpr MultiIndex operator+(MultiIndex a, MultiIndex b) { return {a.j1 + b.j1, a.j2 + b.j2}; }
    friend constexpr auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

    std::string str() const { return "(" + std::to_string(j1) + "," + std::to_string(j2) + ")"; }
};

inline constexpr MultiIndex unit_x{1, 0};
inline constexpr MultiIndex unit_y{0, 1};

/// (zeta - z)^a for the multi-index a.
inline double monomial(Point d, MultiIndex a) { return ipow(d.real(), a.j1) * ipow(d.imag(), a.j2); }

/// All multi-indices with |a| <= n, graded by order then by j2.
inline std::vector<MultiIndex> indices_up_to(int n)
{
    std::vector<MultiIndex> out;
    for (int k = 0; k <= n; ++k)
        for (int b = 0; b <= k; ++b)
            out.emplace_back(k - b, b);
    return out;
}

/// Order in which the unit steps of a decomposition are listed. Mixed partials
/// commute, so results never depend on it; `x_first` is the canonical order.
enum class StepOrder { x_first, y_first };

struct DecompositionTriple {
    MultiIndex theta;  ///< e_1 + ... + e_tau
    MultiIndex step;   ///< e_{tau+1}
    MultiIndex phi;    ///< e_{tau+2} + ... + e_n
};

/// j = e_1 + ... + e_n together with the splittings j = theta_tau + e_{tau+1} + phi_tau,
/// tau = 1..n-1 (triples[tau-1]).
struct IndexDecomposition {
    MultiIndex index;
    std::vector<MultiIndex> steps;
    std::vector<DecompositionTriple> triples;
};

inline IndexDecomposition decompose(MultiIndex j, StepOrder order = StepOrder::x_first)
{
    if (j.order() == 0)
        throw Error("no decomposition of the zero index");
    IndexDecomposition d;
    d.index = j;
    const auto push = [&](MultiIndex e, int count) { d.steps.insert(d.steps.end(), count, e); };
    if (order == StepOrder::x_first) {
        push(unit_x, j.j1);
        push(unit_y, j.j2);
    } else {
        push(unit_y, j.j2);
        push(unit_x, j.j1);
    }
    const int n = j.order();
    MultiIndex theta;
    for (int tau = 1; tau <= n - 1; ++tau) {
        theta = theta + d.steps[tau - 1];
        MultiIndex phi;
        for (int k = tau + 2; k <= n; ++k)
            phi = phi + d.steps[k - 1];
        d.triples.push_back({theta, d.steps[tau], phi});
    }
    return d;
}

}  // namespace skpot
