#include "problem_file.hpp"

#include <scalevar/errors.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

namespace scalevar::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& why) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": " + why, line_no);
}

double parse_double(std::string_view text, const std::string& path, std::size_t line_no) {
    const std::string_view t = trim(text);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        fail(path, line_no, "expected a real number, got '" + std::string(t) + "'");
    return value;
}

int parse_int(std::string_view text, const std::string& path, std::size_t line_no) {
    const std::string_view t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        fail(path, line_no, "expected an integer, got '" + std::string(t) + "'");
    return value;
}

}  // namespace

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open problem file '" + path + "'");

    ProblemFile pf;
    std::string section;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(path, line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "interval" && section != "boundary" && section != "objective" &&
                section != "constraint" && section != "curve" && section != "numerics")
                fail(path, line_no, "unknown section '[" + section + "]'");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(path, line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (section.empty()) fail(path, line_no, "key '" + key + "' appears before any section");
        if (key.empty()) fail(path, line_no, "empty key");

        if (section == "interval") {
            if (key == "a") pf.a = parse_double(value, path, line_no);
            else if (key == "b") pf.b = parse_double(value, path, line_no);
            else fail(path, line_no, "unknown key '" + key + "' in [interval]");
        } else if (section == "boundary") {
            if (key == "a0") pf.a0 = parse_double(value, path, line_no);
            else if (key == "b0") pf.b0 = parse_double(value, path, line_no);
            else fail(path, line_no, "unknown key '" + key + "' in [boundary]");
        } else if (section == "objective") {
            if (key == "f") pf.objective = std::string(value);
            else fail(path, line_no, "unknown key '" + key + "' in [objective]");
        } else if (section == "constraint") {
            if (key == "g") pf.constraint = std::string(value);
            else if (key == "K_re") pf.k_re = parse_double(value, path, line_no);
            else if (key == "K_im") pf.k_im = parse_double(value, path, line_no);
            else fail(path, line_no, "unknown key '" + key + "' in [constraint]");
        } else if (section == "curve") {
            if (key == "y") pf.curve_expr = std::string(value);
            else if (key == "samples") pf.samples_path = std::string(value);
            else fail(path, line_no, "unknown key '" + key + "' in [curve]");
        } else {  // numerics
            if (key == "eps0") pf.numerics.eps0 = parse_double(value, path, line_no);
            else if (key == "ratio") pf.numerics.ratio = parse_double(value, path, line_no);
            else if (key == "count") pf.numerics.count = parse_int(value, path, line_no);
            else if (key == "n_panels") pf.numerics.n_panels = parse_int(value, path, line_no);
            else if (key == "grid_points") pf.numerics.grid_points = parse_int(value, path, line_no);
            else if (key == "zero_tol") pf.numerics.zero_tol = parse_double(value, path, line_no);
            else if (key == "conv_tol") pf.numerics.conv_tol = parse_double(value, path, line_no);
            else fail(path, line_no, "unknown key '" + key + "' in [numerics]");
        }
    }
    if (pf.curve_expr && pf.samples_path)
        throw ParameterError(path + ": [curve] must set either 'y' or 'samples', not both");
    return pf;
}

void apply_numerics_overrides(Numerics& numerics, const std::vector<std::string>& overrides) {
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParameterError("--numerics expects key=value, got '" + item + "'");
        const std::string key(trim(std::string_view(item).substr(0, eq)));
        const std::string_view value = trim(std::string_view(item).substr(eq + 1));
        const auto as_double = [&] { return parse_double(value, "--numerics " + key, 0); };
        const auto as_int = [&] { return parse_int(value, "--numerics " + key, 0); };
        if (key == "eps0") numerics.eps0 = as_double();
        else if (key == "ratio") numerics.ratio = as_double();
        else if (key == "count") numerics.count = as_int();
        else if (key == "n_panels") numerics.n_panels = as_int();
        else if (key == "grid_points") numerics.grid_points = as_int();
        else if (key == "zero_tol") numerics.zero_tol = as_double();
        else if (key == "conv_tol") numerics.conv_tol = as_double();
        else throw ParameterError("--numerics: unknown key '" + key + "'");
    }
}

void load_samples_csv(const std::string& path, std::vector<double>& xs,
                      std::vector<double>& values) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open samples file '" + path + "'");
    xs.clear();
    values.clear();
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) fail(path, line_no, "expected 'x,value'");
        const std::string_view xs_text = trim(line.substr(0, comma));
        const std::string_view vs_text = trim(line.substr(comma + 1));
        double x = 0;
        auto [xp, xe] = std::from_chars(xs_text.data(), xs_text.data() + xs_text.size(), x);
        if (xe != std::errc{} || xp != xs_text.data() + xs_text.size()) {
            if (line_no == 1) continue;  // header row
            fail(path, line_no, "expected a real number, got '" + std::string(xs_text) + "'");
        } else {
            xs.push_back(x);
            values.push_back(parse_double(vs_text, path, line_no));
        }
    }
    if (xs.empty()) throw ParameterError(path + ": no samples found");
}

std::vector<double> interior_grid(double a, double b, int n) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
        throw ParameterError("interval requires finite a < b");
    if (n < 1) throw ParameterError("grid_points must be at least 1");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        grid[static_cast<std::size_t>(j - 1)] =
            a + (b - a) * static_cast<double>(j) / static_cast<double>(n + 1);
    return grid;
}

std::vector<double> closed_grid(double a, double b, int n) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
        throw ParameterError("interval requires finite a < b");
    if (n < 2) throw ParameterError("a closed grid needs at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        grid[static_cast<std::size_t>(j)] =
            a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
    grid.front() = a;
    grid.back() = b;
    return grid;
}

}  // namespace scalevar::cli
