#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "scalevar/curve.hpp"
#include "scalevar/expr.hpp"
#include "scalevar/variational.hpp"

namespace scalevar {

/// A constrained stationarity problem: minimize the action of f over curves
/// y with y(a) = a0, y(b) = b0 subject to the action of g being K. The grid
/// carries the interior points where residuals are probed; the endpoints are
/// appended automatically wherever a sup-norm over the interval is needed.
struct IsoProblem {
    Expr f;
    Expr g;
    double a = -1.0;
    double b = 1.0;
    double a0 = 0.0;
    double b0 = 0.0;
    Complex K{0.0, 0.0};
    std::vector<double> grid;
    EpsilonSchedule schedule{};
    QuadratureConfig quad{};
    double zero_tol = 1e-6;
    double conv_tol = 1e-6;
};

enum class IsoVerdict { ExtremalConfirmed, StationarityViolated, HypothesesFailed, Inconclusive };

/// Stable lower-case token for reports and the command line.
const char* verdict_name(IsoVerdict v);

struct IsoReport {
    double lambda = 0.0;
    double residual_sup_norm_L = 0.0;
    bool hypothesis1_ok = false;
    bool hypothesis2_ok = false;
    double constraint_gap = 0.0;
    IsoVerdict verdict = IsoVerdict::Inconclusive;
};

/// Hypothesis check for the multiplier theorem: (1) y is not stationary for
/// the constraint integrand, and (2) the residual sup-norms of both
/// integrands have convergent (hence finite) limits over the closed
/// interval. `conclusive` goes false when any extrapolation involved failed
/// to converge, in which case neither hypothesis value is trustworthy.
struct HypothesesReport {
    bool h1 = false;
    bool h2 = false;
    bool conclusive = true;
    ExtremalReport g_extremality;
    LimitEstimate f_sup_limit;
    LimitEstimate g_sup_limit;
};

/// |action(g, y) - K| at the smallest scheduled scale. Throws
/// PreconditionError unless y matches the boundary values within
/// boundary_tol.
double check_constraint(const IsoProblem& p, const Curve& y, double boundary_tol = 1e-9);

HypothesesReport check_hypotheses(const IsoProblem& p, const Curve& y);

/// Real least-squares multiplier lambda* = Re(sum r_f conj(r_g)) / sum |r_g|^2
/// over the limit-filtered residual fields on the grid. Throws
/// DegenerateConstraintError when the constraint residual field vanishes.
double estimate_multiplier(const IsoProblem& p, const Curve& y);

/// Full pipeline: constraint gap, hypotheses, multiplier, then the residual
/// limits of L = f - lambda*g over the closed interval. The verdict is
/// ExtremalConfirmed only when both hypotheses hold and both the L-residual
/// sup-norm and the constraint gap are within tol; non-convergent
/// extrapolations anywhere yield Inconclusive rather than a guess.
IsoReport verify_iso_extremal(const IsoProblem& p, const Curve& y, double tol = 1e-6);

/// Actions of f and g along y + e1*eta1 + e2*eta2, the two-parameter family
/// used to derive the multiplier. Both variations must vanish at the
/// endpoints. eps defaults to the smallest scheduled scale.
std::pair<Complex, Complex> two_parameter_variation_probe(const IsoProblem& p, const Curve& y,
                                                          const Curve& eta1, const Curve& eta2,
                                                          double e1, double e2,
                                                          std::optional<double> eps = {});

}  // namespace scalevar
