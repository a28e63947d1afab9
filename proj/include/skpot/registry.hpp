#pragma once

#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "density.hpp"
#include "fields.hpp"

namespace skpot::registry {

namespace detail {

inline double parse_number(std::string_view text, std::string_view what)
{
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw Error("cannot parse " + std::string(what) + " from '" + s + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace detail

/// Map names: `id`, `z^k`, `mobius(a)` or `mobius(a,b)` for a + bi, and
/// chains `m1>m2>...` applying m1 first.
inline HolomorphicMap map(std::string_view name)
{
    const auto stages = detail::split(name, '>');
    if (stages.size() > 1) {
        HolomorphicMap acc = map(stages.front());
        for (std::size_t i = 1; i < stages.size(); ++i)
            acc = maps::compose(map(stages[i]), acc);
        return acc;
    }
    if (name == "id")
        return maps::identity();
    if (detail::starts_with(name, "z^"))
        return maps::power(static_cast<int>(detail::parse_number(name.substr(2), "power")));
    if (detail::starts_with(name, "mobius(") && name.back() == ')') {
        const auto args = detail::split(name.substr(7, name.size() - 8), ',');
        const double re = detail::parse_number(args.at(0), "Möbius parameter");
        const double im = args.size() > 1 ? detail::parse_number(args[1], "Möbius parameter") : 0.0;
        return maps::mobius({re, im});
    }
    throw Error("unknown map '" + std::string(name) + "'");
}

/// Density names: `hyperbolic-disk`, `hyperbolic-punctured`, `exp-x2`,
/// `maximal:alpha=..,R=..`, `scaled:<c>:<base>`, `restrict:<radius>:<base>`,
/// `pullback:<map>:<base>`. Pullbacks live on the unit disk.
inline ConformalDensity density(std::string_view name)
{
    if (name == "hyperbolic-disk")
        return densities::hyperbolic_disk();
    if (name == "hyperbolic-punctured")
        return densities::hyperbolic_punctured();
    if (name == "exp-x2")
        return densities::exp_x_squared();
    if (detail::starts_with(name, "maximal")) {
        double alpha = 0.0, R = 1.0;
        if (name.size() > 7) {
            if (name[7] != ':')
                throw Error("expected maximal:alpha=..,R=..");
            for (auto kv : detail::split(name.substr(8), ',')) {
                const auto eq = kv.find('=');
                if (eq == std::string_view::npos)
                    throw Error("expected key=value in '" + std::string(kv) + "'");
                const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "alpha")
                    alpha = detail::parse_number(val, "alpha");
                else if (key == "R")
                    R = detail::parse_number(val, "R");
                else
                    throw Error("unknown maximal-density parameter '" + std::string(key) + "'");
            }
        }
        ConformalDensity d = densities::maximal(alpha, R);
        d.name = std::string(name);
        return d;
    }
    if (detail::starts_with(name, "scaled:")) {
        const auto rest = name.substr(7);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw Error("expected scaled:<c>:<base>");
        ConformalDensity d = density(rest.substr(colon + 1))
                                 .scaled(detail::parse_number(rest.substr(0, colon), "scale factor"));
        d.name = std::string(name);
        return d;
    }
    if (detail::starts_with(name, "restrict:")) {
        const auto rest = name.substr(9);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw Error("expected restrict:<radius>:<base>");
        const ConformalDensity base = density(rest.substr(colon + 1));
        ConformalDensity d = base.restricted(
            DiskDomain(detail::parse_number(rest.substr(0, colon), "restriction radius"), base.domain.punctured));
        d.name = std::string(name);
        return d;
    }
    if (detail::starts_with(name, "pullback:")) {
        const auto rest = name.substr(9);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw Error("expected pullback:<map>:<base>");
        ConformalDensity d = pullback_density(density(rest.substr(colon + 1)), map(rest.substr(0, colon)),
                                              DiskDomain(1.0));
        d.name = std::string(name);
        return d;
    }
    throw Error("unknown density '" + std::string(name) + "'");
}

/// Field names: `zero`, `one`, `const:<c>`, `gaussian`, `wave`.
inline ScalarField field(std::string_view name)
{
    if (name == "zero")
        return fields::zero();
    if (name == "one")
        return fields::constant(1.0);
    if (detail::starts_with(name, "const:"))
        return fields::constant(detail::parse_number(name.substr(6), "constant"));
    if (name == "gaussian")
        return fields::gaussian();
    if (name == "wave")
        return fields::wave();
    throw Error("unknown field '" + std::string(name) + "'");
}

}  // namespace skpot::registry
