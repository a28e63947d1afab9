#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>

#include "common.hpp"
#include "finite_difference.hpp"
#include "multi_index.hpp"

namespace skpot {

/// A real function on a plane region with a derivative oracle. When no
/// analytic partials are supplied, partial() falls back to Richardson-
/// extrapolated central differences.
class ScalarField {
public:
    using EvalFn = std::function<double(Point)>;
    using PartialFn = std::function<double(MultiIndex, Point)>;

    /// Smoothness class recorded for C-infinity fields.
    static constexpr int smooth = std::numeric_limits<int>::max();

    explicit ScalarField(EvalFn eval, PartialFn partial = {}, int smoothness = smooth,
                         std::optional<double> hoelder_nu = 1.0)
        : eval_(std::make_shared<EvalFn>(std::move(eval))),
          partial_(partial ? std::make_shared<PartialFn>(std::move(partial)) : nullptr),
          smoothness_(smoothness),
          hoelder_(hoelder_nu)
    {
        if (!*eval_)
            throw Error("scalar field needs an evaluation function");
        if (hoelder_ && (*hoelder_ <= 0.0 || *hoelder_ > 1.0))
            throw Error("Hoelder exponent must lie in (0,1]");
    }

    double operator()(Point z) const { return (*eval_)(z); }

    /// d^j f(z); partial({0,0}, z) == f(z).
    double partial(MultiIndex j, Point z) const
    {
        if (j.order() == 0)
            return (*this)(z);
        const double v = partial_ ? (*partial_)(j, z)
                                  : richardson_difference(*this, j, z, default_partial_step(j, z));
        if (!std::isfinite(v))
            throw Error("derivative oracle failed for index " + j.str());
        return v;
    }

    /// The field d^e f, with partials shifted by e.
    ScalarField derivative(MultiIndex e) const
    {
        ScalarField self = *this;
        PartialFn shifted;
        if (partial_)
            shifted = [self, e](MultiIndex a, Point z) { return self.partial(a + e, z); };
        const int s = smoothness_ == smooth ? smooth : smoothness_ - e.order();
        return ScalarField([self, e](Point z) { return self.partial(e, z); }, std::move(shifted), s,
                           hoelder_);
    }

    bool has_analytic_partials() const { return partial_ != nullptr; }
    int smoothness() const { return smoothness_; }
    std::optional<double> hoelder_nu() const { return hoelder_; }

    ScalarField with_regularity(int smoothness, std::optional<double> hoelder_nu) const
    {
        ScalarField copy = *this;
        copy.smoothness_ = smoothness;
        copy.hoelder_ = hoelder_nu;
        return copy;
    }

private:
    std::shared_ptr<const EvalFn> eval_;
    std::shared_ptr<const PartialFn> partial_;
    int smoothness_ = smooth;
    std::optional<double> hoelder_ = 1.0;
};

}  // namespace skpot
