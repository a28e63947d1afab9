// skpot: batch front end over the skpot headers. All output is deterministic.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skpot/selfcheck.hpp"
#include "skpot/skpot.hpp"

using nlohmann::json;
using skpot::Point;

namespace {

constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double xmin, xmax, ymin, ymax;
    int nx, ny;

    // "xmin,xmax,ymin,ymax,n" or "xmin,xmax,ymin,ymax,nx,ny"; endpoints included.
    static GridSpec parse(const std::string& text)
    {
        std::vector<double> v;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            const double d = std::strtod(item.c_str(), &end);
            if (item.empty() || *end != '\0')
                throw UsageError("bad grid entry '" + item + "'");
            v.push_back(d);
        }
        if (v.size() != 5 && v.size() != 6)
            throw UsageError("grid must be xmin,xmax,ymin,ymax,n[,ny]");
        GridSpec g{v[0], v[1], v[2], v[3], static_cast<int>(v[4]), static_cast<int>(v.size() == 6 ? v[5] : v[4])};
        if (g.nx < 1 || g.ny < 1 || g.nx != v[4] || g.xmax < g.xmin || g.ymax < g.ymin)
            throw UsageError("grid bounds must be ordered and resolutions positive integers");
        return g;
    }

    // Row-major: y outer, x inner.
    std::vector<Point> points() const
    {
        std::vector<Point> pts;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                pts.emplace_back(nx == 1 ? xmin : xmin + (xmax - xmin) * i / (nx - 1),
                                 ny == 1 ? ymin : ymin + (ymax - ymin) * j / (ny - 1));
        return pts;
    }
};

skpot::MultiIndex parse_index(const std::string& text)
{
    int a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d,%d%c", &a, &b, &tail) != 2 || a < 0 || b < 0)
        throw UsageError("multi-index must be 'j1,j2' with non-negative entries, got '" + text + "'");
    return {a, b};
}

// CSV + JSON table; cells are numbers, booleans, strings or null.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json summary = json::object();

    Table() = default;
    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

    void add(std::vector<json> row) { rows.push_back(std::move(row)); }

    static std::string cell(const json& v)
    {
        if (v.is_null())
            return "";
        if (v.is_boolean())
            return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer())
            return std::to_string(v.get<long long>());
        if (v.is_number())
            return skpot::format_double(v.get<double>());
        std::string str = v.get<std::string>();
        if (str.find_first_of(",\"\n") == std::string::npos)
            return str;
        std::string q = "\"";
        for (char c : str)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + '"';
    }

    void write_csv(std::ostream& os) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << cell(r[i]);
            os << '\n';
        }
    }

    json to_json(const std::string& command, const json& config) const
    {
        json rows_json = json::array();
        for (const auto& r : rows) {
            json o = json::object();
            for (std::size_t i = 0; i < r.size(); ++i)
                o[columns[i]] = r[i];
            rows_json.push_back(o);
        }
        return {{"command", command}, {"config", config}, {"columns", columns}, {"rows", rows_json}, {"summary", summary}};
    }
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Options {
    std::string command;
    std::optional<std::string> grid;
    std::vector<double> alpha;
    std::optional<double> R;
    std::optional<int> radial_nodes, angular_nodes;
    std::optional<double> tol;
    std::string out, json_out;

    std::vector<std::string> density;
    std::string reference = "hyperbolic-disk";
    std::string inner_density;
    std::string field = "gaussian";
    double support_radius = 0.8;
    std::vector<std::string> index;
    std::optional<double> fd_step;
    std::string csv_in;
    int kmin = 4;
    std::optional<int> kmax;
    int angles = 720;
    int order_n = 3;
    int probes = 8;

    skpot::QuadratureConfig quadrature() const
    {
        skpot::QuadratureConfig cfg;
        if (radial_nodes)
            cfg.radial_nodes = *radial_nodes;
        if (angular_nodes)
            cfg.angular_nodes = *angular_nodes;
        cfg.validate();
        return cfg;
    }

    std::vector<Point> grid_points(const std::string& fallback) const { return GridSpec::parse(grid.value_or(fallback)).points(); }

    std::string single_density(const std::string& fallback) const
    {
        if (density.size() > 1)
            throw UsageError(command + " takes a single --density");
        return density.empty() ? fallback : density.front();
    }

    json as_json() const
    {
        json j = {{"command", command}, {"alpha", alpha}, {"density", density}, {"reference", reference},
                  {"inner_density", inner_density}, {"field", field}, {"support_radius", support_radius},
                  {"index", index}, {"csv_in", csv_in}, {"kmin", kmin}, {"angles", angles}, {"order_n", order_n},
                  {"probes", probes}};
        j["grid"] = grid ? json(*grid) : json(nullptr);
        j["R"] = R ? json(*R) : json(nullptr);
        j["radial_nodes"] = radial_nodes ? json(*radial_nodes) : json(nullptr);
        j["angular_nodes"] = angular_nodes ? json(*angular_nodes) : json(nullptr);
        j["tol"] = tol ? json(*tol) : json(nullptr);
        j["fd_step"] = fd_step ? json(*fd_step) : json(nullptr);
        j["kmax"] = kmax ? json(*kmax) : json(nullptr);
        return j;
    }
};

std::vector<skpot::MultiIndex> indices(const Options& o, const char* fallback)
{
    std::vector<skpot::MultiIndex> out;
    for (const auto& s : o.index.empty() ? std::vector<std::string>{fallback} : o.index)
        out.push_back(parse_index(s));
    return out;
}

skpot::PotentialProblem potential_problem(const Options& o)
{
    return skpot::PotentialProblem(skpot::registry::field(o.field), o.support_radius, o.R, o.quadrature());
}

Table cmd_potential(const Options& o)
{
    const auto p = potential_problem(o);
    const auto js = indices(o, "0,0");
    Table t{{"x", "y", "j1", "j2", "value", "area_term", "boundary_sum", "R_used"}};
    double max_abs = 0;
    for (Point z : o.grid_points("-0.6,0.6,-0.6,0.6,5")) {
        if (std::abs(z) >= p.r)
            continue;
        for (auto j : js) {
            const auto rep = skpot::potential_deriv(p, z, j);
            t.add({z.real(), z.imag(), j.j1, j.j2, rep.value, rep.area_term, rep.boundary_sum(), rep.R_used});
            max_abs = std::max(max_abs, std::abs(rep.value));
        }
    }
    t.summary = {{"rows", t.rows.size()}, {"max_abs_value", max_abs}};
    return t;
}

Table cmd_check_deriv(const Options& o)
{
    const auto p = potential_problem(o);
    const auto js = indices(o, "3,0");
    Table t{{"x", "y", "j1", "j2", "value", "fd_oracle", "abs_diff", "rel_diff", "area_term", "boundary_sum"}};
    double max_abs = 0, max_rel = 0;
    for (Point z : o.grid_points("-0.3,0.3,-0.3,0.3,3")) {
        if (std::abs(z) >= p.r)
            continue;
        for (auto j : js) {
            const auto rep = skpot::potential_deriv(p, z, j);
            const double fd = skpot::fd_oracle(p, z, j, o.fd_step.value_or(skpot::default_fd_step(p, j)));
            const double ad = std::abs(rep.value - fd);
            const double rd = ad / std::max(std::abs(fd), std::numeric_limits<double>::min());
            t.add({z.real(), z.imag(), j.j1, j.j2, rep.value, fd, ad, rd, rep.area_term, rep.boundary_sum()});
            max_abs = std::max(max_abs, ad);
            max_rel = std::max(max_rel, rd);
        }
    }
    t.summary = {{"rows", t.rows.size()}, {"max_abs_diff", max_abs}, {"max_rel_diff", max_rel}};
    return t;
}

Table cmd_curvature(const Options& o)
{
    if (!o.csv_in.empty()) {
        Table t{{"x", "y", "lambda", "kappa_grid"}};
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& g : skpot::grid_curvature(skpot::read_density_csv(o.csv_in))) {
            t.add({g.z.real(), g.z.imag(), g.lambda, g.curvature});
            lo = std::min(lo, g.curvature);
            hi = std::max(hi, g.curvature);
        }
        t.summary = {{"rows", t.rows.size()}, {"min_kappa", number_or_null(lo)}, {"max_kappa", number_or_null(hi)}};
        return t;
    }
    const auto d = skpot::registry::density(o.single_density("hyperbolic-disk"));
    const auto cfg = o.quadrature();
    Table t{{"x", "y", "lambda", "kappa_laplace", "kappa_meanvalue"}};
    double lo = INFINITY, hi = -INFINITY;
    std::size_t skipped = 0;
    for (Point z : o.grid_points("-0.9,0.9,-0.9,0.9,7")) {
        if (!d.contains(z) || d(z) == 0.0) {
            ++skipped;
            continue;
        }
        const double kl = skpot::curvature_laplace(d, z), km = skpot::curvature_meanvalue(d, z, cfg);
        t.add({z.real(), z.imag(), d(z), kl, km});
        lo = std::min({lo, kl, km});
        hi = std::max({hi, kl, km});
    }
    t.summary = {{"rows", t.rows.size()}, {"skipped", skipped}, {"min_kappa", number_or_null(lo)},
                 {"max_kappa", number_or_null(hi)}};
    return t;
}

Table cmd_order(const Options& o)
{
    std::vector<std::string> names = o.density;
    for (double a : o.alpha)
        names.push_back("maximal:alpha=" + skpot::format_double(a) + ",R=" + skpot::format_double(o.R.value_or(1.0)));
    if (names.empty())
        throw UsageError("order needs --density or --alpha");
    const auto radii = skpot::dyadic_radii(o.kmin, o.kmax.value_or(20));
    skpot::OrderOptions opt;
    opt.angular_samples = o.angles;
    Table t{{"density", "alpha", "fit_quality", "cusp_flag", "reliable"}};
    json profiles = json::object();
    for (const auto& name : names) {
        const auto est = skpot::order_of_density(skpot::registry::density(name), radii, opt);
        t.add({name, est.alpha, est.fit_quality, est.cusp_flag, est.reliable});
        profiles[name] = {{"radii", est.radii}, {"max_log_lambda", est.max_on_circle}};
    }
    t.summary = {{"rows", t.rows.size()}, {"profiles", profiles}};
    return t;
}

Table cmd_ahlfors(const Options& o)
{
    const auto ref = skpot::registry::density(o.reference);
    const double tol = o.tol.value_or(1e-12);
    std::vector<std::pair<Point, double>> samples;
    if (!o.csv_in.empty()) {
        for (const auto& s : skpot::read_density_csv(o.csv_in))
            samples.emplace_back(s.z, s.lambda);
    } else {
        const auto sk = skpot::registry::density(o.single_density("pullback:z^2:hyperbolic-disk"));
        for (Point z : o.grid_points("-0.95,0.95,-0.95,0.95,21"))
            if (sk.contains(z))
                samples.emplace_back(z, sk(z));
    }
    Table t{{"x", "y", "sk", "reference", "margin"}};
    double worst = INFINITY;
    std::size_t violations = 0;
    for (const auto& [z, s] : samples) {
        if (!ref.contains(z))
            continue;
        const double r = ref(z), m = r - s;
        t.add({z.real(), z.imag(), s, r, m});
        worst = std::min(worst, m);
        if (m < -tol * (1.0 + r))
            ++violations;
    }
    t.summary = {{"rows", t.rows.size()}, {"min_margin", number_or_null(worst)}, {"violations", violations}};
    return t;
}

Table cmd_glue(const Options& o, int& status)
{
    const auto lam = skpot::registry::density(o.single_density("pullback:z^2:hyperbolic-disk"));
    const auto mu = skpot::registry::density(o.inner_density.empty() ? "pullback:mobius(0.3)>z^2:hyperbolic-disk"
                                                                     : o.inner_density);
    const double tol = o.tol.value_or(1e-2);
    std::vector<Point> probes;
    for (int k = 0; k < o.probes; ++k) {
        const double th = skpot::two_pi * k / o.probes;
        probes.push_back(mu.domain.radius * Point(std::cos(th), std::sin(th)));
    }
    Table t{{"x", "y", "sigma", "lambda", "mu", "kappa_meanvalue"}};
    try {
        const auto sigma = skpot::glue(lam, mu, probes, tol);
        const auto grid = o.grid_points("-0.8,0.8,-0.8,0.8,9");
        const auto cfg = o.quadrature();
        std::vector<Point> inside;
        for (Point z : grid) {
            if (!sigma.contains(z))
                continue;
            inside.push_back(z);
            const double s = sigma(z);
            t.add({z.real(), z.imag(), s, lam(z), mu.contains(z) ? json(mu(z)) : json(nullptr),
                   s > 0 ? json(skpot::curvature_meanvalue(sigma, z, cfg)) : json(nullptr)});
        }
        const auto rep = skpot::sk_verify(sigma, inside, tol, skpot::CurvatureRoute::mean_value, cfg);
        t.summary = {{"glued", true}, {"sk_passed", rep.passed}, {"worst_margin", number_or_null(rep.worst_margin)},
                     {"checked", rep.checked}, {"skipped", rep.skipped}, {"failures", rep.failures.size()}};
        if (!rep.passed)
            status = exit_failure;
    } catch (const skpot::GlueError& e) {
        std::cerr << "skpot: " << e.what() << '\n';
        t.summary = {{"glued", false}, {"error", e.what()}, {"probe_x", e.probe().real()}, {"probe_y", e.probe().imag()},
                     {"mu_limsup", e.mu_limsup()}, {"lambda", e.lambda_value()}, {"excess", e.excess()}};
        status = exit_failure;
    }
    return t;
}

Table cmd_asymptotics(const Options& o)
{
    const std::vector<double> alphas = o.alpha.empty() ? std::vector<double>{0.5, 0.9} : o.alpha;
    const double R = o.R.value_or(1.0);
    const auto radii = skpot::dyadic_radii(o.kmin, o.kmax.value_or(12));
    const double slack = o.tol.value_or(0.15);
    Table t{{"alpha", "n", "slope", "bound", "consistent", "max_liouville_residual"}};
    bool all = true;
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0))
            throw UsageError("asymptotics needs alpha in (0, 1)");
        const auto u = skpot::log_density_field(skpot::densities::maximal(a, R));
        const double slope = skpot::asymptotic_slope(u, a, o.order_n, radii);
        const double bound = 2.0 - 2.0 * a - o.order_n;
        double res = 0;
        for (int k = 0; k < 10; ++k) {
            const double th = 0.4 + skpot::two_pi * k / 10, rad = R * (0.15 + 0.07 * k);
            res = std::max(res, std::abs(skpot::liouville_residual(u, [](Point) { return -4.0; },
                                                                    rad * Point(std::cos(th), std::sin(th)))));
        }
        const bool ok = slope >= bound - slack;
        all = all && ok;
        t.add({a, o.order_n, slope, bound, ok, res});
    }
    t.summary = {{"rows", t.rows.size()}, {"all_consistent", all}};
    return t;
}

Table cmd_sample(const Options& o)
{
    const auto d = skpot::registry::density(o.single_density("hyperbolic-disk"));
    Table t{{"x", "y", "lambda"}};
    std::vector<Point> inside;
    for (Point z : o.grid_points("-0.9,0.9,-0.9,0.9,19"))
        if (d.contains(z))
            inside.push_back(z);
    for (const auto& s : skpot::sample_density(d, inside))
        t.add({s.z.real(), s.z.imag(), s.lambda});
    t.summary = {{"rows", t.rows.size()}, {"density", d.name}};
    return t;
}

Table cmd_selfcheck(int& status)
{
    Table t{{"check", "passed", "measured", "tolerance"}};
    std::size_t failed = 0;
    for (const auto& c : skpot::run_selfcheck()) {
        t.add({c.name, c.passed, number_or_null(c.measured), c.tolerance});
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
        failed += c.passed ? 0 : 1;
    }
    t.summary = {{"checks", t.rows.size()}, {"failed", failed}};
    if (failed)
        status = exit_failure;
    return t;
}

const char* help_footer = R"(Commands and CSV columns (one row per evaluation point):
  potential     x,y,j1,j2,value,area_term,boundary_sum,R_used
                derivatives of the log potential of --field on D_r (r = --support-radius)
  check-deriv   x,y,j1,j2,value,fd_oracle,abs_diff,rel_diff,area_term,boundary_sum
  curvature     x,y,lambda,kappa_laplace,kappa_meanvalue   (with --csv-in: x,y,lambda,kappa_grid)
  order         density,alpha,fit_quality,cusp_flag,reliable   (--density or --alpha, repeatable)
  ahlfors       x,y,sk,reference,margin   (margin = reference - sk; --csv-in supplies sk samples)
  glue          x,y,sigma,lambda,mu,kappa_meanvalue   (sigma = max(lambda, mu) on U)
  asymptotics   alpha,n,slope,bound,consistent,max_liouville_residual
  sample        x,y,lambda   (density grid export, readable by --csv-in)
  selfcheck     check,passed,measured,tolerance   (exit 1 on any failure)

Densities: hyperbolic-disk, hyperbolic-punctured, exp-x2, maximal:alpha=A,R=R,
  scaled:C:<base>, restrict:RADIUS:<base>, pullback:<map>:<base>
Maps: id, z^K, mobius(a) or mobius(re,im), chains m1>m2 (m1 applied first)
Fields: zero, one, const:C, gaussian, wave
Grid: xmin,xmax,ymin,ymax,n[,ny] with endpoints included, rows ordered y-major.
Floating point is written with 17 significant digits; text cells containing commas are quoted.
Exit status: 0 ok, 1 check failure, 2 usage error.)";

int run(int argc, char** argv)
{
    CLI::App app{"skpot: logarithmic potentials and SK-metric checks"};
    app.footer(help_footer);
    Options o;
    const std::vector<std::string> commands = {"potential", "check-deriv", "curvature", "order", "ahlfors",
                                               "glue",      "asymptotics", "sample",    "selfcheck"};
    std::string positional;
    app.add_option("subcommand", positional, "command name (same as --command)")->check(CLI::IsMember(commands));
    app.add_option("--command", o.command, "subcommand")->check(CLI::IsMember(commands));
    app.add_option("--grid", o.grid, "evaluation grid xmin,xmax,ymin,ymax,n[,ny]");
    app.add_option("--alpha", o.alpha, "singularity order(s)")->delimiter(',');
    app.add_option("--R", o.R, "extension radius (potential) or outer radius (maximal densities)");
    app.add_option("--radial-nodes", o.radial_nodes, "Gauss-Legendre nodes in radius");
    app.add_option("--angular-nodes", o.angular_nodes, "trapezoid nodes in angle");
    app.add_option("--tol", o.tol, "check tolerance");
    app.add_option("--out", o.out, "CSV output path (default stdout)");
    app.add_option("--json", o.json_out, "JSON summary path");
    app.add_option("--density", o.density, "density name (repeatable for order)");
    app.add_option("--reference", o.reference, "reference density for ahlfors");
    app.add_option("--inner-density", o.inner_density, "density mu on the subdomain U for glue");
    app.add_option("--field", o.field, "source field f for potential/check-deriv");
    app.add_option("--support-radius", o.support_radius, "radius r of the support disk");
    app.add_option("--index", o.index, "multi-index j1,j2 (repeatable)")->take_all();
    app.add_option("--fd-step", o.fd_step, "finite-difference step for check-deriv");
    app.add_option("--csv-in", o.csv_in, "density samples x,y,lambda");
    app.add_option("--kmin", o.kmin, "first dyadic exponent");
    app.add_option("--kmax", o.kmax, "last dyadic exponent");
    app.add_option("--angles", o.angles, "angular samples for circle maxima");
    app.add_option("--order-n", o.order_n, "derivative order for asymptotics");
    app.add_option("--probes", o.probes, "boundary probe points for glue");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (!positional.empty() && !o.command.empty() && positional != o.command)
            throw UsageError("conflicting commands '" + positional + "' and '" + o.command + "'");
        if (o.command.empty())
            o.command = positional;
        if (o.command.empty())
            throw UsageError("no command given");

        int status = 0;
        Table t;
        try {
            if (o.command == "potential")
                t = cmd_potential(o);
            else if (o.command == "check-deriv")
                t = cmd_check_deriv(o);
            else if (o.command == "curvature")
                t = cmd_curvature(o);
            else if (o.command == "order")
                t = cmd_order(o);
            else if (o.command == "ahlfors")
                t = cmd_ahlfors(o);
            else if (o.command == "glue")
                t = cmd_glue(o, status);
            else if (o.command == "asymptotics")
                t = cmd_asymptotics(o);
            else if (o.command == "sample")
                t = cmd_sample(o);
            else
                t = cmd_selfcheck(status);
        } catch (const UsageError&) {
            throw;
        } catch (const skpot::Error& e) {
            // Registry, grid and domain errors surface here before any output.
            throw UsageError(e.what());
        }

        if (o.out.empty() || o.out == "-") {
            t.write_csv(std::cout);
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f)
                throw UsageError("cannot write " + o.out);
            t.write_csv(f);
        }
        if (!o.json_out.empty()) {
            std::ofstream f(o.json_out, std::ios::binary);
            if (!f)
                throw UsageError("cannot write " + o.json_out);
            f << t.to_json(o.command, o.as_json()).dump(2) << '\n';
        }
        return status;
    } catch (const UsageError& e) {
        std::cerr << "skpot: " << e.what() << "\nRun with --help for usage.\n";
        return exit_usage;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "skpot: " << e.what() << '\n';
        return exit_failure;
    }
}
