#pragma once

#include <random>
#include <span>

#include "scalevar/curve.hpp"

namespace scalevar {

/// Result of a log-log regression of the modulus of continuity against the
/// scale. `degenerate` marks curves with no measurable increments (constants),
/// reported as alpha_hat = 1 with the smallest positive c.
struct HolderEstimate {
    double alpha_hat = 1.0;
    double c_hat = 0.0;
    double regression_r2 = 0.0;
    int scales_used = 0;
    bool degenerate = false;
};

/// Largest observed ratio |f(x') - f(x)| / eps^alpha over randomly probed
/// pairs with |x' - x| <= eps, for each eps in eps_set — a lower bound on the
/// Hölder constant at exponent alpha. Sampling draws from `rng`, one
/// substream per scale, and extending probe_count extends each substream, so
/// the result is non-decreasing in probe_count for a fixed caller seed.
double holder_constant(const Curve& f, double alpha, std::span<const double> eps_set,
                       int probe_count, std::mt19937_64& rng);

/// Fit alpha from max-increment measurements on a strictly decreasing scale
/// schedule (at least 3 entries). The modulus at each scale is measured on a
/// deterministic dense grid (at least probe_count nodes, and at least 8 nodes
/// per smallest window), so repeated calls agree exactly.
HolderEstimate estimate_exponent(const Curve& f, std::span<const double> eps_schedule,
                                 int probe_count);

/// Smallest variation exponent compatible with curve class alpha:
/// alpha itself for alpha >= 1/2, otherwise 1 - alpha.
double min_variation_exponent(double alpha);

/// Estimation slack applied to the exponent comparison in admissibility
/// checks, compensating the downward bias of finite-grid estimates.
inline constexpr double kExponentSlack = 0.05;

struct AdmissibilityReport {
    bool admissible = false;
    bool endpoints_vanish = false;
    bool exponent_sufficient = false;
    double h_at_a = 0.0;
    double h_at_b = 0.0;
    double required_exponent = 0.0;  // min_variation_exponent(alpha), before slack
    HolderEstimate estimate;
};

/// A curve h is an admissible variation over [a, b] at class exponent alpha
/// when h(a) and h(b) vanish to tolerance `tol` and its estimated exponent
/// reaches min_variation_exponent(alpha) - kExponentSlack. Degenerate
/// (constant-zero) curves pass the exponent test by convention.
AdmissibilityReport is_admissible_variation(const Curve& h, double alpha, double a, double b,
                                            double tol);

/// Same with the default endpoint tolerance: 1e-12 for closed forms, exact
/// node values (tol = 0) for sampled curves.
AdmissibilityReport is_admissible_variation(const Curve& h, double alpha, double a, double b);

}  // namespace scalevar
