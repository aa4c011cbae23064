// Command-line front end: scale derivatives, stationarity checks, constrained
// verification, product-rule defect measurement, and schedule sweeps.
//
// Output contract: CSV always carries a header row, uses ',' as separator,
// prints numbers with 17 significant digits via the C locale, and is
// byte-identical across runs for identical inputs. Exit codes: 0 confirmed /
// success, 1 negative verdict, 2 input error, 3 inconclusive.

#include <CLI11.hpp>

#include <scalevar/curve.hpp>
#include <scalevar/errors.hpp>
#include <scalevar/expr.hpp>
#include <scalevar/holder.hpp>
#include <scalevar/isoperimetric.hpp>
#include <scalevar/scale_ops.hpp>
#include <scalevar/variational.hpp>

#include "problem_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace scalevar;
using cli::Numerics;
using cli::ProblemFile;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }

double need(const std::optional<double>& v, const char* what) {
    if (!v) throw ParameterError(std::string("problem file is missing ") + what);
    return *v;
}

const std::string& need(const std::optional<std::string>& v, const char* what) {
    if (!v) throw ParameterError(std::string("problem file is missing ") + what);
    return *v;
}

Curve problem_curve(const ProblemFile& pf, double lo, double hi) {
    if (pf.curve_expr) return Curve::from_expression(parse(*pf.curve_expr), lo, hi);
    if (pf.samples_path) {
        std::vector<double> xs;
        std::vector<double> values;
        cli::load_samples_csv(*pf.samples_path, xs, values);
        return Curve::from_samples(std::move(xs), std::move(values));
    }
    throw ParameterError("problem file is missing [curve] (key y or samples)");
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string_view item(text.data() + start, end - start);
        while (!item.empty() && (item.front() == ' ' || item.front() == '\t'))
            item.remove_prefix(1);
        while (!item.empty() && (item.back() == ' ' || item.back() == '\t'))
            item.remove_suffix(1);
        if (item.empty()) throw ParameterError("--grid: empty entry in list");
        double v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw ParameterError("--grid: expected a real number, got '" + std::string(item) +
                                 "'");
        values.push_back(v);
        if (end == text.size()) break;
        start = end + 1;
    }
    if (values.empty()) throw ParameterError("--grid: empty list");
    return values;
}

// '|' joins multiple flags so the field never contains the CSV separator.
std::string limit_flags(const LimitEstimate& est) {
    std::string flags = est.converged ? "converged" : "not_converged";
    if (est.is_zero) flags += "|zero";
    return flags;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw ParameterError("failed while writing '" + path + "'");
}

void emit(const std::string& text) { std::fwrite(text.data(), 1, text.size(), stdout); }

constexpr const char* kSweepHeader =
    "eps,x,residual_re,residual_im,bracket_value_re,bracket_value_im,flags\n";

/// Residual values on the point grid for every schedule scale, plus the
/// per-point extrapolated limits; shared by `sweep --what residual` and the
/// --csv dump of el-check.
std::string residual_sweep_csv(const Expr& integrand, const Curve& y,
                               std::span<const double> grid, const EpsilonSchedule& schedule,
                               double zero_tol, double conv_tol) {
    const std::vector<double> scales = schedule.scales();
    std::vector<ResidualField> fields;
    fields.reserve(scales.size());
    for (const double eps : scales) fields.push_back(el_residual(integrand, y, grid, eps));

    std::vector<LimitEstimate> limits(grid.size());
    std::vector<Complex> samples(scales.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (std::size_t k = 0; k < scales.size(); ++k) samples[k] = fields[k].values[j];
        limits[j] = extrapolate_limit(scales, samples, zero_tol, conv_tol);
    }

    std::string out = kSweepHeader;
    for (std::size_t k = 0; k < scales.size(); ++k) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const Complex r = fields[k].values[j];
            out += fmt(scales[k]) + "," + fmt(grid[j]) + "," + fmt(r.real()) + "," +
                   fmt(r.imag()) + "," + fmt(limits[j].value.real()) + "," +
                   fmt(limits[j].value.imag()) + "," + limit_flags(limits[j]) + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// scale-deriv
// ---------------------------------------------------------------------------

struct ScaleDerivOptions {
    std::string file;
    std::string curve_text;
    std::optional<double> eps;
    std::string grid_text;
    std::vector<std::string> numerics;
};

int run_scale_deriv(const ScaleDerivOptions& opt) {
    ProblemFile pf;
    if (!opt.file.empty()) pf = cli::load_problem_file(opt.file);
    cli::apply_numerics_overrides(pf.numerics, opt.numerics);

    const double eps = opt.eps.value_or(pf.numerics.eps0);
    std::vector<double> grid;
    if (!opt.grid_text.empty()) {
        grid = parse_double_list(opt.grid_text);
    } else {
        const double a = need(pf.a, "[interval] a (or pass --grid)");
        const double b = need(pf.b, "[interval] b (or pass --grid)");
        grid = cli::closed_grid(a, b, pf.numerics.grid_points);
    }

    Curve y = [&] {
        if (!opt.curve_text.empty()) {
            double lo = grid.front();
            double hi = grid.front();
            for (const double x : grid) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            if (pf.a) lo = std::min(lo, *pf.a);
            if (pf.b) hi = std::max(hi, *pf.b);
            const double margin = 4.0 * std::abs(eps);
            return Curve::from_expression(parse(opt.curve_text), lo - margin, hi + margin);
        }
        double lo = grid.front();
        double hi = grid.front();
        for (const double x : grid) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const double margin = 4.0 * std::abs(eps);
        ProblemFile widened = pf;
        return problem_curve(widened, lo - margin, hi + margin);
    }();

    const std::vector<Complex> field = scale_derivative_field(y, grid, eps);
    std::string out = "x,re,im\n";
    for (std::size_t j = 0; j < grid.size(); ++j)
        out +=
            fmt(grid[j]) + "," + fmt(field[j].real()) + "," + fmt(field[j].imag()) + "\n";
    emit(out);
    return 0;
}

// ---------------------------------------------------------------------------
// el-check
// ---------------------------------------------------------------------------

struct ElCheckOptions {
    std::string file;
    std::string which = "objective";
    std::string csv_path;
    std::vector<std::string> numerics;
};

const std::string& pick_integrand(const ProblemFile& pf, const std::string& which) {
    if (which == "objective") return need(pf.objective, "[objective] f");
    return need(pf.constraint, "[constraint] g");
}

int run_el_check(const ElCheckOptions& opt) {
    ProblemFile pf = cli::load_problem_file(opt.file);
    cli::apply_numerics_overrides(pf.numerics, opt.numerics);
    const double a = need(pf.a, "[interval] a");
    const double b = need(pf.b, "[interval] b");
    const Expr integrand = parse(pick_integrand(pf, opt.which));
    const std::vector<double> grid = cli::interior_grid(a, b, pf.numerics.grid_points);
    const EpsilonSchedule schedule{pf.numerics.eps0, pf.numerics.ratio, pf.numerics.count};
    const double margin = 4.0 * pf.numerics.eps0;
    const Curve y = problem_curve(pf, a - margin, b + margin);

    const ExtremalReport report =
        is_extremal(integrand, y, grid, schedule, pf.numerics.zero_tol, pf.numerics.conv_tol);

    std::string out;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const LimitEstimate& est = report.limits[j];
        out += "x=" + fmt(grid[j]) + " bracket_re=" + fmt(est.value.real()) +
               " bracket_im=" + fmt(est.value.imag()) + " " + limit_flags(est) + "\n";
    }
    const char* verdict = report.verdict == ExtremalVerdict::Extremal        ? "extremal"
                          : report.verdict == ExtremalVerdict::NotExtremal   ? "not_extremal"
                                                                             : "inconclusive";
    out += std::string("verdict: ") + verdict + "\n";
    emit(out);

    if (!opt.csv_path.empty())
        write_text(opt.csv_path, residual_sweep_csv(integrand, y, grid, schedule,
                                                    pf.numerics.zero_tol, pf.numerics.conv_tol));

    switch (report.verdict) {
        case ExtremalVerdict::Extremal: return 0;
        case ExtremalVerdict::NotExtremal: return 1;
        case ExtremalVerdict::Inconclusive: return 3;
    }
    return 2;
}

// ---------------------------------------------------------------------------
// iso-check
// ---------------------------------------------------------------------------

struct IsoCheckOptions {
    std::string file;
    bool machine = false;
    double tol = 1e-6;
    std::vector<std::string> numerics;
};

int run_iso_check(const IsoCheckOptions& opt) {
    ProblemFile pf = cli::load_problem_file(opt.file);
    cli::apply_numerics_overrides(pf.numerics, opt.numerics);
    const double a = need(pf.a, "[interval] a");
    const double b = need(pf.b, "[interval] b");

    IsoProblem problem{
        .f = parse(need(pf.objective, "[objective] f")),
        .g = parse(need(pf.constraint, "[constraint] g")),
        .a = a,
        .b = b,
        .a0 = need(pf.a0, "[boundary] a0"),
        .b0 = need(pf.b0, "[boundary] b0"),
        .K = Complex{need(pf.k_re, "[constraint] K_re"), pf.k_im.value_or(0.0)},
        .grid = cli::interior_grid(a, b, pf.numerics.grid_points),
        .schedule = EpsilonSchedule{pf.numerics.eps0, pf.numerics.ratio, pf.numerics.count},
        .quad = QuadratureConfig{pf.numerics.n_panels},
        .zero_tol = pf.numerics.zero_tol,
        .conv_tol = pf.numerics.conv_tol,
    };
    const double margin = 4.0 * pf.numerics.eps0;
    const Curve y = problem_curve(pf, a - margin, b + margin);

    const IsoReport report = verify_iso_extremal(problem, y, opt.tol);

    std::string out;
    out += "constraint gap |G(y) - K| = " + fmt(report.constraint_gap) + "\n";
    out += std::string("hypothesis 1 (curve is non-stationary for the constraint): ") +
           (report.hypothesis1_ok ? "satisfied" : "not satisfied") + "\n";
    out += std::string("hypothesis 2 (sup-norm residual brackets converge): ") +
           (report.hypothesis2_ok ? "satisfied" : "not satisfied") + "\n";
    out += "multiplier lambda = " + fmt(report.lambda) + "\n";
    out += "sup-norm of the combined stationarity residual = " +
           fmt(report.residual_sup_norm_L) + "\n";
    out += std::string("verdict: ") + verdict_name(report.verdict) + "\n";
    if (opt.machine) {
        out += "lambda=" + fmt(report.lambda) + "\n";
        out += "residual_sup_norm_L=" + fmt(report.residual_sup_norm_L) + "\n";
        out += std::string("hypothesis1_ok=") + (report.hypothesis1_ok ? "1" : "0") + "\n";
        out += std::string("hypothesis2_ok=") + (report.hypothesis2_ok ? "1" : "0") + "\n";
        out += "constraint_gap=" + fmt(report.constraint_gap) + "\n";
        out += std::string("verdict=") + verdict_name(report.verdict) + "\n";
    }
    emit(out);

    switch (report.verdict) {
        case IsoVerdict::ExtremalConfirmed: return 0;
        case IsoVerdict::StationarityViolated: return 1;
        case IsoVerdict::HypothesesFailed: return 1;
        case IsoVerdict::Inconclusive: return 3;
    }
    return 2;
}

// ---------------------------------------------------------------------------
// leibniz-test
// ---------------------------------------------------------------------------

struct LeibnizOptions {
    std::uint64_t seed = 12345;
    int trials = 500;
};

Expr random_polynomial(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> degree_dist(0, 4);
    std::uniform_real_distribution<double> coeff_dist(-2.0, 2.0);
    const int degree = degree_dist(rng);
    Expr acc = Expr::constant(coeff_dist(rng));
    for (int k = 1; k <= degree; ++k)
        acc = acc + Expr::constant(coeff_dist(rng)) * Expr::pow(Expr::variable(Var::X), k);
    return acc;
}

int run_leibniz(const LeibnizOptions& opt) {
    if (opt.trials < 0) throw ParameterError("--trials must be non-negative");
    constexpr double kDefectTol = 1e-10;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> x_dist(-2.0, 2.0);
    std::uniform_real_distribution<double> eps_dist(1e-3, 0.5);

    double max_defect = 0.0;
    for (int t = 0; t < opt.trials; ++t) {
        const Curve f = Curve::from_expression(random_polynomial(rng), -3.0, 3.0);
        const Curve g = Curve::from_expression(random_polynomial(rng), -3.0, 3.0);
        const double x = x_dist(rng);
        const double eps = eps_dist(rng);
        max_defect = std::max(max_defect, std::abs(leibniz_defect(f, g, x, eps)));
    }

    std::string out;
    out += "trials=" + fmt(opt.trials) + "\n";
    out += "seed=" + std::to_string(opt.seed) + "\n";
    out += "max_defect=" + fmt(max_defect) + "\n";
    if (opt.trials == 0) {
        std::fprintf(stderr, "warning: no trials were run; the pass is vacuous\n");
        out += "PASS (vacuous: no trials)\n";
        emit(out);
        return 0;
    }
    const bool pass = max_defect < kDefectTol;
    out += pass ? "PASS (max defect below 1e-10)\n" : "FAIL (max defect at or above 1e-10)\n";
    emit(out);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::string file;
    std::string what = "residual";
    std::string which = "objective";
    std::uint64_t seed = 42;
    int probes = 512;
    std::vector<std::string> numerics;
};

int run_sweep(const SweepOptions& opt) {
    ProblemFile pf = cli::load_problem_file(opt.file);
    cli::apply_numerics_overrides(pf.numerics, opt.numerics);
    const double a = need(pf.a, "[interval] a");
    const double b = need(pf.b, "[interval] b");
    const EpsilonSchedule schedule{pf.numerics.eps0, pf.numerics.ratio, pf.numerics.count};
    const std::vector<double> scales = schedule.scales();
    const double margin = 4.0 * pf.numerics.eps0;
    const Curve y = problem_curve(pf, a - margin, b + margin);

    if (opt.what == "residual") {
        const Expr integrand = parse(pick_integrand(pf, opt.which));
        const std::vector<double> grid = cli::interior_grid(a, b, pf.numerics.grid_points);
        emit(residual_sweep_csv(integrand, y, grid, schedule, pf.numerics.zero_tol,
                                pf.numerics.conv_tol));
        return 0;
    }

    if (opt.what == "functional") {
        const Expr integrand = parse(pick_integrand(pf, opt.which));
        const QuadratureConfig quad{pf.numerics.n_panels};
        std::vector<Complex> samples(scales.size());
        for (std::size_t k = 0; k < scales.size(); ++k)
            samples[k] = functional_value(integrand, y, a, b, scales[k], quad);
        const LimitEstimate limit =
            extrapolate_limit(scales, samples, pf.numerics.zero_tol, pf.numerics.conv_tol);
        std::string out = kSweepHeader;
        for (std::size_t k = 0; k < scales.size(); ++k)
            out += fmt(scales[k]) + ",," + fmt(samples[k].real()) + "," +
                   fmt(samples[k].imag()) + "," + fmt(limit.value.real()) + "," +
                   fmt(limit.value.imag()) + "," + limit_flags(limit) + "\n";
        emit(out);
        return 0;
    }

    if (opt.what == "holder") {
        if (opt.probes < 1) throw ParameterError("--probes must be positive");
        const HolderEstimate est = estimate_exponent(y, scales, opt.probes);
        // The estimate may sit exactly on the Lipschitz boundary alpha = 1,
        // which the constant prober excludes; back off by one ulp there.
        const double alpha = std::min(est.alpha_hat, std::nextafter(1.0, 0.0));
        std::string out = kSweepHeader;
        for (const double eps : scales) {
            std::mt19937_64 rng(opt.seed);
            const double c = holder_constant(y, alpha, std::span(&eps, 1), opt.probes, rng);
            out += fmt(eps) + ",," + fmt(c) + ",," + fmt(est.alpha_hat) + "," +
                   fmt(est.regression_r2) + "," + (est.degenerate ? "degenerate" : "ok") +
                   "\n";
        }
        emit(out);
        return 0;
    }

    throw ParameterError("--what must be residual, functional, or holder");
}

// ---------------------------------------------------------------------------
// defaults
// ---------------------------------------------------------------------------

int run_defaults() {
    const Numerics d{};
    std::string out;
    out += "eps0=" + fmt(d.eps0) + "\n";
    out += "ratio=" + fmt(d.ratio) + "\n";
    out += "count=" + fmt(d.count) + "\n";
    out += "n_panels=" + fmt(d.n_panels) + "\n";
    out += "grid_points=" + fmt(d.grid_points) + "\n";
    out += "zero_tol=" + fmt(d.zero_tol) + "\n";
    out += "conv_tol=" + fmt(d.conv_tol) + "\n";
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scale-derivative toolkit for Hölder-continuous curves"};
    app.require_subcommand(1);

    ScaleDerivOptions sd_opt;
    CLI::App* sd = app.add_subcommand(
        "scale-deriv", "Evaluate the scale derivative of a curve on a grid (CSV: x,re,im)");
    sd->add_option("file", sd_opt.file, "Problem file (optional when --curve and --grid given)");
    sd->add_option("--curve", sd_opt.curve_text, "Curve expression in x (overrides [curve])");
    sd->add_option("--eps", sd_opt.eps, "Scale parameter (default: numerics eps0)");
    sd->add_option("--grid", sd_opt.grid_text,
                   "Comma-separated evaluation points (default: closed grid over [a,b])");
    sd->add_option("--numerics", sd_opt.numerics, "Override numerics as key=value (repeatable)");

    ElCheckOptions el_opt;
    CLI::App* el = app.add_subcommand(
        "el-check", "Check pointwise stationarity of a curve for an integrand");
    el->add_option("file", el_opt.file, "Problem file")->required();
    el->add_option("--which", el_opt.which, "Integrand to check: objective or constraint")
        ->check(CLI::IsMember({"objective", "constraint"}));
    el->add_option("--csv", el_opt.csv_path, "Also write the residual sweep CSV to this path");
    el->add_option("--numerics", el_opt.numerics, "Override numerics as key=value (repeatable)");

    IsoCheckOptions iso_opt;
    CLI::App* iso = app.add_subcommand(
        "iso-check", "Verify constrained stationarity via the multiplier test");
    iso->add_option("file", iso_opt.file, "Problem file")->required();
    iso->add_flag("--machine", iso_opt.machine, "Append a machine-readable key=value block");
    iso->add_option("--tol", iso_opt.tol, "Decision tolerance (default 1e-6)");
    iso->add_option("--numerics", iso_opt.numerics, "Override numerics as key=value (repeatable)");

    LeibnizOptions lz_opt;
    CLI::App* lz = app.add_subcommand(
        "leibniz-test", "Measure the product-rule defect on random polynomial pairs");
    lz->add_option("--seed", lz_opt.seed, "Random seed (default 12345)");
    lz->add_option("--trials", lz_opt.trials, "Number of random pairs (default 500)");

    SweepOptions sw_opt;
    CLI::App* sw = app.add_subcommand(
        "sweep", "Emit per-scale diagnostics across the epsilon schedule (CSV)");
    sw->add_option("file", sw_opt.file, "Problem file")->required();
    sw->add_option("--what", sw_opt.what, "residual, functional, or holder")
        ->check(CLI::IsMember({"residual", "functional", "holder"}));
    sw->add_option("--which", sw_opt.which, "Integrand: objective or constraint")
        ->check(CLI::IsMember({"objective", "constraint"}));
    sw->add_option("--seed", sw_opt.seed, "Seed for holder probing (default 42)");
    sw->add_option("--probes", sw_opt.probes, "Probe count for holder sweeps (default 512)");
    sw->add_option("--numerics", sw_opt.numerics, "Override numerics as key=value (repeatable)");

    CLI::App* df = app.add_subcommand("defaults", "Print the centralized numeric defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sd->parsed()) return run_scale_deriv(sd_opt);
        if (el->parsed()) return run_el_check(el_opt);
        if (iso->parsed()) return run_iso_check(iso_opt);
        if (lz->parsed()) return run_leibniz(lz_opt);
        if (sw->parsed()) return run_sweep(sw_opt);
        if (df->parsed()) return run_defaults();
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
