#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "density.hpp"

namespace skpot {

/// One row of a density grid file: x, y, lambda.
struct DensitySample {
    Point z;
    double lambda;
};

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_density_csv(std::ostream& os, const std::vector<DensitySample>& rows)
{
    os << "x,y,lambda\n";
    for (const auto& r : rows)
        os << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ',' << format_double(r.lambda)
           << '\n';
}

inline std::vector<DensitySample> read_density_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw Error("density CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "x,y,lambda")
        throw Error("density CSV header must be 'x,y,lambda'");
    std::vector<DensitySample> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream ss(line);
        std::string a, b, c, extra;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',')
            || std::getline(ss, extra, ','))
            throw Error("density CSV line " + std::to_string(lineno) + ": expected three columns");
        try {
            std::size_t pa = 0, pb = 0, pc = 0;
            const double x = std::stod(a, &pa), y = std::stod(b, &pb), lam = std::stod(c, &pc);
            if (pa != a.size() || pb != b.size() || pc != c.size())
                throw std::invalid_argument("trailing characters");
            if (!(lam >= 0.0))
                throw Error("density CSV line " + std::to_string(lineno) + ": lambda must be non-negative");
            rows.push_back({{x, y}, lam});
        } catch (const std::logic_error&) {
            throw Error("density CSV line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return rows;
}

inline std::vector<DensitySample> read_density_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    return read_density_csv(in);
}

inline std::vector<DensitySample> sample_density(const ConformalDensity& d, const std::vector<Point>& grid)
{
    std::vector<DensitySample> out;
    for (Point z : grid)
        if (d.contains(z))
            out.push_back({z, d(z)});
    return out;
}

/// Curvature of sampled densities on a regular grid: the five-point Laplacian
/// of log lambda at nodes whose four neighbours are present and positive.
struct GridCurvature {
    Point z;
    double lambda;
    double curvature;
};

inline std::vector<GridCurvature> grid_curvature(const std::vector<DensitySample>& rows)
{
    std::map<std::pair<long long, long long>, double> at;
    double hx = std::numeric_limits<double>::infinity(), hy = hx;
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(r.z.real());
        ys.push_back(r.z.imag());
    }
    const auto min_gap = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] - v[i - 1] > 1e-12)
                g = std::min(g, v[i] - v[i - 1]);
        return g;
    };
    hx = min_gap(xs);
    hy = min_gap(ys);
    if (!std::isfinite(hx) || !std::isfinite(hy))
        throw Error("density grid needs at least two distinct x and y values");
    if (std::abs(hx - hy) > 1e-9 * std::max(hx, hy))
        throw Error("density grid must have equal x and y spacing");
    const double x0 = *std::min_element(xs.begin(), xs.end()), y0 = *std::min_element(ys.begin(), ys.end());
    const auto key = [&](Point z) {
        return std::make_pair(std::llround((z.real() - x0) / hx), std::llround((z.imag() - y0) / hy));
    };
    for (const auto& r : rows)
        at[key(r.z)] = r.lambda;
    std::vector<GridCurvature> out;
    for (const auto& r : rows) {
        if (!(r.lambda > 0.0))
            continue;
        const auto [i, j] = key(r.z);
        double nb[4];
        const std::pair<long long, long long> offs[4] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        bool ok = true;
        for (int k = 0; k < 4; ++k) {
            auto it = at.find(offs[k]);
            if (it == at.end() || !(it->second > 0.0)) {
                ok = false;
                break;
            }
            nb[k] = std::log(it->second);
        }
        if (!ok)
            continue;
        const double lap = (nb[0] + nb[1] + nb[2] + nb[3] - 4.0 * std::log(r.lambda)) / (hx * hx);
        out.push_back({r.z, r.lambda, -lap / (r.lambda * r.lambda)});
    }
    return out;
}

}  // namespace skpot
