#pragma once

#include <optional>
#include <string>
#include <vector>

namespace scalevar::cli {

/// Numeric knobs shared by every subcommand, in one place so the `defaults`
/// subcommand can print exactly what a run will use.
struct Numerics {
    double eps0 = 0.1;
    double ratio = 0.5;
    int count = 8;
    int n_panels = 256;
    int grid_points = 41;
    double zero_tol = 1e-6;
    double conv_tol = 1e-6;
};

/// Parsed problem file. Sections are optional at load time; each subcommand
/// checks for the ones it needs.
struct ProblemFile {
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> a0;
    std::optional<double> b0;
    std::optional<std::string> objective;
    std::optional<std::string> constraint;
    std::optional<double> k_re;
    std::optional<double> k_im;
    std::optional<std::string> curve_expr;
    std::optional<std::string> samples_path;
    Numerics numerics;
};

/// Loads the INI-like sectioned format:
///   [interval] a, b; [boundary] a0, b0; [objective] f; [constraint] g, K_re,
///   K_im; [curve] y | samples; [numerics] eps0, ratio, count, n_panels,
///   grid_points, zero_tol, conv_tol.
/// Full-line comments start with '#' or ';'. Unknown sections or keys are
/// rejected. Throws ParseError (position = line number) or ParameterError.
ProblemFile load_problem_file(const std::string& path);

/// Applies repeated `key=value` override strings to the numerics block.
/// Accepts exactly the [numerics] keys; throws ParameterError otherwise.
void apply_numerics_overrides(Numerics& numerics, const std::vector<std::string>& overrides);

/// Two-column CSV (x,value) with an optional header row; strictly increasing
/// x enforced downstream by the curve constructor.
void load_samples_csv(const std::string& path, std::vector<double>& xs,
                      std::vector<double>& values);

/// n points strictly inside (a, b): x_j = a + (b-a) * j / (n+1), j = 1..n.
std::vector<double> interior_grid(double a, double b, int n);

/// n points covering [a, b] inclusive; requires n >= 2.
std::vector<double> closed_grid(double a, double b, int n);

}  // namespace scalevar::cli
