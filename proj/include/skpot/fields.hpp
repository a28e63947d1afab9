#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "scalar_field.hpp"

namespace skpot::fields {

inline ScalarField constant(double c)
{
    return ScalarField([c](Point) { return c; },
                       [c](MultiIndex j, Point) { return j.order() == 0 ? c : 0.0; });
}

inline ScalarField zero() { return constant(0.0); }

/// Sum of c * x^a1 * y^a2 terms, with exact partials.
class Polynomial {
public:
    struct Term {
        MultiIndex power;
        double coeff;
    };

    Polynomial() = default;
    explicit Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

    void add(MultiIndex power, double coeff) { terms_.push_back({power, coeff}); }

    int degree() const
    {
        int d = 0;
        for (const auto& t : terms_)
            d = std::max(d, t.power.order());
        return d;
    }

    double partial(MultiIndex j, Point z) const
    {
        CompensatedSum acc;
        for (const auto& t : terms_) {
            if (t.power.j1 < j.j1 || t.power.j2 < j.j2)
                continue;
            const double fall = falling(t.power.j1, j.j1) * falling(t.power.j2, j.j2);
            acc += t.coeff * fall * ipow(z.real(), t.power.j1 - j.j1) * ipow(z.imag(), t.power.j2 - j.j2);
        }
        return acc.value();
    }

    double operator()(Point z) const { return partial({0, 0}, z); }

    ScalarField field() const
    {
        Polynomial p = *this;
        return ScalarField([p](Point z) { return p(z); }, [p](MultiIndex j, Point z) { return p.partial(j, z); });
    }

    const std::vector<Term>& terms() const { return terms_; }

private:
    static double falling(int n, int k)
    {
        double r = 1.0;
        for (int i = 0; i < k; ++i)
            r *= n - i;
        return r;
    }

    std::vector<Term> terms_;
};

namespace detail {
/// Physicists' Hermite polynomial H_n(t).
inline double hermite(int n, double t)
{
    double h0 = 1.0;
    if (n == 0)
        return h0;
    double h1 = 2.0 * t;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * t * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}
}  // namespace detail

/// exp(-|zeta - center|^2); partials via d^n/dt^n exp(-t^2) = (-1)^n H_n(t) exp(-t^2).
inline ScalarField gaussian(Point center = {0, 0})
{
    return ScalarField([center](Point z) { return std::exp(-std::norm(z - center)); },
                       [center](MultiIndex j, Point z) {
                           const Point d = z - center;
                           const double sign = (j.order() % 2) ? -1.0 : 1.0;
                           return sign * detail::hermite(j.j1, d.real()) * detail::hermite(j.j2, d.imag())
                                  * std::exp(-std::norm(d));
                       });
}

/// sin(2 x1 + 1) cos(x2).
inline ScalarField wave()
{
    return ScalarField([](Point z) { return std::sin(2 * z.real() + 1) * std::cos(z.imag()); },
                       [](MultiIndex j, Point z) {
                           return ipow(2.0, j.j1) * std::sin(2 * z.real() + 1 + 0.5 * pi * j.j1)
                                  * std::cos(z.imag() + 0.5 * pi * j.j2);
                       });
}

/// Field known only through point values; partials come from finite differences.
inline ScalarField sampled(ScalarField::EvalFn f, int smoothness = ScalarField::smooth,
                           std::optional<double> hoelder_nu = 1.0)
{
    return ScalarField(std::move(f), {}, smoothness, hoelder_nu);
}

}  // namespace skpot::fields
