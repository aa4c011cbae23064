#include "scalevar/isoperimetric.hpp"

#include <algorithm>
#include <cmath>

#include "scalevar/errors.hpp"

namespace scalevar {

namespace {

// Below this, the normal equation for lambda has no usable signal.
constexpr double kDegenerateDenominator = 1e-12;

void validate_problem(const IsoProblem& p) {
    if (!(p.a < p.b) || !std::isfinite(p.a) || !std::isfinite(p.b)) {
        throw ParameterError("problem interval must be finite with a < b");
    }
    if (!std::isfinite(p.a0) || !std::isfinite(p.b0)) {
        throw ParameterError("boundary values must be finite");
    }
    if (!std::isfinite(p.K.real()) || !std::isfinite(p.K.imag())) {
        throw ParameterError("constraint value must be finite");
    }
    if (p.grid.empty()) {
        throw ParameterError("problem grid must not be empty");
    }
    for (double x : p.grid) {
        if (!std::isfinite(x) || !(p.a < x) || !(x < p.b)) {
            throw ParameterError("grid points must lie strictly inside (a, b)");
        }
    }
}

// Sup-norms over the interval must see the endpoints, not just the interior
// probe points: the kinked reference problem reaches its constraint-residual
// maximum exactly at x = a and x = b.
std::vector<double> closed_grid(const IsoProblem& p) {
    std::vector<double> out;
    out.reserve(p.grid.size() + 2);
    out.push_back(p.a);
    out.insert(out.end(), p.grid.begin(), p.grid.end());
    out.push_back(p.b);
    return out;
}

LimitEstimate sup_norm_limit(const Expr& f, const Curve& y, const std::vector<double>& grid,
                             const IsoProblem& p) {
    auto sampler = [&](double eps) {
        const ResidualField field = el_residual(f, y, grid, eps);
        double m = 0.0;
        for (const Complex& v : field.values) {
            m = std::max(m, std::abs(v));
        }
        return Complex{m, 0.0};
    };
    return bracket_limit(sampler, p.schedule, p.zero_tol, p.conv_tol);
}

}  // namespace

const char* verdict_name(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::ExtremalConfirmed: return "extremal_confirmed";
        case IsoVerdict::StationarityViolated: return "stationarity_violated";
        case IsoVerdict::HypothesesFailed: return "hypotheses_failed";
        case IsoVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double check_constraint(const IsoProblem& p, const Curve& y, double boundary_tol) {
    validate_problem(p);
    if (!(boundary_tol >= 0.0)) {
        throw ParameterError("boundary_tol must be non-negative");
    }
    const auto scales = p.schedule.scales();
    if (std::abs(y(p.a) - p.a0) > boundary_tol || std::abs(y(p.b) - p.b0) > boundary_tol) {
        throw PreconditionError("curve does not match the prescribed boundary values");
    }
    const Complex G = functional_value(p.g, y, p.a, p.b, scales.back(), p.quad);
    return std::abs(G - p.K);
}

HypothesesReport check_hypotheses(const IsoProblem& p, const Curve& y) {
    validate_problem(p);
    HypothesesReport rep;
    rep.g_extremality = is_extremal(p.g, y, p.grid, p.schedule, p.zero_tol, p.conv_tol);
    switch (rep.g_extremality.verdict) {
        case ExtremalVerdict::NotExtremal: rep.h1 = true; break;
        case ExtremalVerdict::Extremal: rep.h1 = false; break;
        case ExtremalVerdict::Inconclusive:
            rep.h1 = false;
            rep.conclusive = false;
            break;
    }

    const auto grid = closed_grid(p);
    rep.f_sup_limit = sup_norm_limit(p.f, y, grid, p);
    rep.g_sup_limit = sup_norm_limit(p.g, y, grid, p);
    rep.h2 = rep.f_sup_limit.converged && rep.g_sup_limit.converged;
    if (!rep.h2) {
        rep.conclusive = false;
    }
    return rep;
}

double estimate_multiplier(const IsoProblem& p, const Curve& y) {
    validate_problem(p);
    const auto rf = bracket_field(p.f, y, p.grid, p.schedule, p.zero_tol, p.conv_tol);
    const auto rg = bracket_field(p.g, y, p.grid, p.schedule, p.zero_tol, p.conv_tol);
    double numer = 0.0;
    double denom = 0.0;
    for (size_t j = 0; j < rf.size(); ++j) {
        numer += (rf[j].value * std::conj(rg[j].value)).real();
        denom += std::norm(rg[j].value);
    }
    if (denom <= kDegenerateDenominator) {
        throw DegenerateConstraintError(
            "constraint residual field vanishes on the grid; no multiplier is identifiable");
    }
    return numer / denom;
}

IsoReport verify_iso_extremal(const IsoProblem& p, const Curve& y, double tol) {
    validate_problem(p);
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw ParameterError("tol must be positive and finite");
    }
    IsoReport rep;
    rep.constraint_gap = check_constraint(p, y);

    const HypothesesReport hyp = check_hypotheses(p, y);
    rep.hypothesis1_ok = hyp.h1;
    rep.hypothesis2_ok = hyp.h2;
    if (!hyp.conclusive) {
        rep.verdict = IsoVerdict::Inconclusive;
        return rep;
    }
    if (!hyp.h1 || !hyp.h2) {
        rep.verdict = IsoVerdict::HypothesesFailed;
        return rep;
    }

    try {
        rep.lambda = estimate_multiplier(p, y);
    } catch (const DegenerateConstraintError&) {
        rep.verdict = IsoVerdict::HypothesesFailed;
        return rep;
    }

    const Expr lagrangian = simplify(p.f - Expr::constant(rep.lambda) * p.g);
    const auto grid = closed_grid(p);
    const auto limits = bracket_field(lagrangian, y, grid, p.schedule, p.zero_tol, p.conv_tol);
    bool all_converged = true;
    double sup = 0.0;
    for (const LimitEstimate& est : limits) {
        if (!est.converged) {
            all_converged = false;
            continue;
        }
        sup = std::max(sup, std::abs(est.value));
    }
    rep.residual_sup_norm_L = sup;
    if (!all_converged) {
        rep.verdict = IsoVerdict::Inconclusive;
    } else if (sup > tol || rep.constraint_gap > tol) {
        rep.verdict = IsoVerdict::StationarityViolated;
    } else {
        rep.verdict = IsoVerdict::ExtremalConfirmed;
    }
    return rep;
}

std::pair<Complex, Complex> two_parameter_variation_probe(const IsoProblem& p, const Curve& y,
                                                          const Curve& eta1, const Curve& eta2,
                                                          double e1, double e2,
                                                          std::optional<double> eps) {
    validate_problem(p);
    if (!std::isfinite(e1) || !std::isfinite(e2)) {
        throw ParameterError("variation amplitudes must be finite");
    }
    constexpr double kEndpointTol = 1e-9;
    for (const Curve* eta : {&eta1, &eta2}) {
        if (std::abs((*eta)(p.a)) > kEndpointTol || std::abs((*eta)(p.b)) > kEndpointTol) {
            throw PreconditionError("variations must vanish at both endpoints");
        }
    }
    const double eps_used = eps.value_or(p.schedule.scales().back());
    const Curve bumped = combination({{1.0, y}, {e1, eta1}, {e2, eta2}});
    const Complex i_val = functional_value(p.f, bumped, p.a, p.b, eps_used, p.quad);
    const Complex g_val = functional_value(p.g, bumped, p.a, p.b, eps_used, p.quad);
    return {i_val, g_val};
}

}  // namespace scalevar
