#pragma once

#include <vector>

#include "multi_index.hpp"
#include "scalar_field.hpp"

namespace skpot {

/// P_n[f](z, .) = sum_{|a|<=n} (zeta - z)^a d^a f(z) / a!, with the
/// coefficients d^a f(z) / a! gathered once at construction.
class TaylorPolynomial {
public:
    TaylorPolynomial(const ScalarField& f, int n, Point z) : n_(n), center_(z)
    {
        if (n < 0)
            throw Error("Taylor degree must be non-negative");
        for (MultiIndex a : indices_up_to(n)) {
            double d = 0.0;
            try {
                d = f.partial(a, z);
            } catch (const std::exception& e) {
                throw Error("Taylor polynomial of degree " + std::to_string(n) + ": partial " + a.str()
                            + " unavailable: " + e.what());
            }
            terms_.push_back({a, d / a.factorial()});
        }
    }

    double operator()(Point zeta) const
    {
        const Point d = zeta - center_;
        CompensatedSum acc;
        for (const auto& t : terms_)
            acc += t.coeff * monomial(d, t.index);
        return acc.value();
    }

    int degree() const { return n_; }
    Point center() const { return center_; }

private:
    struct Term {
        MultiIndex index;
        double coeff;
    };
    int n_;
    Point center_;
    std::vector<Term> terms_;
};

inline double taylor_poly(const ScalarField& f, int n, Point z, Point zeta)
{
    return TaylorPolynomial(f, n, z)(zeta);
}

/// f(zeta) - P_n[f](z, zeta); O(|zeta - z|^{n+nu}) for f in C^{n,nu}.
inline double taylor_remainder(const ScalarField& f, int n, Point z, Point zeta)
{
    return f(zeta) - taylor_poly(f, n, z, zeta);
}

}  // namespace skpot
