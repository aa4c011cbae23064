#include "scalevar/holder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "scalevar/errors.hpp"

namespace scalevar {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("Hölder exponent alpha must lie in (0, 1)");
}

// Max f - min f over every window of width eps on a uniform grid of n+1
// nodes, via monotonic index deques (one forward sweep).
double modulus_on_grid(const std::vector<double>& vals, double lo, double span, int n,
                       double eps) {
    auto node = [&](int k) { return lo + span * (static_cast<double>(k) / n); };
    std::deque<int> maxq, minq;
    double best = 0.0;
    int j = 0;
    for (int i = 0; i <= n; ++i) {
        while (j <= n && node(j) <= node(i) + eps) {
            while (!maxq.empty() && vals[maxq.back()] <= vals[j]) maxq.pop_back();
            maxq.push_back(j);
            while (!minq.empty() && vals[minq.back()] >= vals[j]) minq.pop_back();
            minq.push_back(j);
            ++j;
        }
        while (maxq.front() < i) maxq.pop_front();
        while (minq.front() < i) minq.pop_front();
        best = std::max(best, vals[maxq.front()] - vals[minq.front()]);
    }
    return best;
}

}  // namespace

double holder_constant(const Curve& f, double alpha, std::span<const double> eps_set,
                       int probe_count, std::mt19937_64& rng) {
    require_alpha(alpha);
    if (eps_set.empty()) throw ParameterError("eps_set must be non-empty");
    if (probe_count < 2) throw ParameterError("probe_count must be at least 2");
    for (double eps : eps_set)
        if (!(eps > 0.0) || !std::isfinite(eps))
            throw ParameterError("scales must be positive finite reals");

    // One substream per scale. Drawing all substream seeds up front keeps the
    // substreams independent of each other's probe consumption, so raising
    // probe_count only appends probes.
    std::vector<std::uint64_t> seeds(eps_set.size());
    for (auto& s : seeds) s = rng();

    double best = 0.0;
    for (std::size_t k = 0; k < eps_set.size(); ++k) {
        const double eps = eps_set[k];
        std::mt19937_64 sub(seeds[k]);
        std::uniform_real_distribution<double> xs(f.lo(), f.hi());
        std::uniform_real_distribution<double> us(0.0, 1.0);
        const double denom = std::pow(eps, alpha);
        for (int p = 0; p < probe_count; ++p) {
            const double x = xs(sub);
            const double u = us(sub);  // always drawn, keeping the stream aligned
            const double offset = (p % 2 == 0) ? eps : eps * u;
            const double x2 = std::min(x + offset, f.hi());
            best = std::max(best, std::abs(f(x2) - f(x)) / denom);
        }
    }
    return best;
}

HolderEstimate estimate_exponent(const Curve& f, std::span<const double> eps_schedule,
                                 int probe_count) {
    if (eps_schedule.size() < 3)
        throw ParameterError("exponent estimation needs at least 3 scales");
    if (probe_count < 2) throw ParameterError("probe_count must be at least 2");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0) || !std::isfinite(eps_schedule[i]))
            throw ParameterError("scales must be positive finite reals");
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
            throw ParameterError("scale schedule must be strictly decreasing");
    }

    const double span = f.hi() - f.lo();
    const double eps_min = eps_schedule.back();
    const int n = std::max<int>(probe_count,
                                static_cast<int>(std::ceil(8.0 * span / eps_min)));
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        vals[static_cast<std::size_t>(k)] = f(f.lo() + span * (static_cast<double>(k) / n));

    HolderEstimate est;
    est.scales_used = static_cast<int>(eps_schedule.size());

    std::vector<double> log_eps, log_mod;
    for (double eps : eps_schedule) {
        const double m = modulus_on_grid(vals, f.lo(), span, n, eps);
        if (m <= 0.0) {
            est.alpha_hat = 1.0;
            est.c_hat = std::numeric_limits<double>::min();
            est.regression_r2 = 0.0;
            est.degenerate = true;
            return est;
        }
        log_eps.push_back(std::log(eps));
        log_mod.push_back(std::log(m));
    }

    const auto m = static_cast<double>(log_eps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_eps.size(); ++i) {
        sx += log_eps[i];
        sy += log_mod[i];
        sxx += log_eps[i] * log_eps[i];
        sxy += log_eps[i] * log_mod[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (std::size_t i = 0; i < log_eps.size(); ++i) {
        const double fit = slope * log_eps[i] + intercept;
        ss_res += (log_mod[i] - fit) * (log_mod[i] - fit);
        ss_tot += (log_mod[i] - mean_y) * (log_mod[i] - mean_y);
    }

    est.alpha_hat = std::clamp(slope, 1e-6, 1.0);
    est.c_hat = std::exp(intercept);
    est.regression_r2 = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0)
                                     : (ss_res == 0.0 ? 1.0 : 0.0);
    return est;
}

double min_variation_exponent(double alpha) {
    require_alpha(alpha);
    return alpha >= 0.5 ? alpha : 1.0 - alpha;
}

AdmissibilityReport is_admissible_variation(const Curve& h, double alpha, double a, double b,
                                            double tol) {
    require_alpha(alpha);
    if (!(tol >= 0.0)) throw ParameterError("endpoint tolerance must be non-negative");
    if (!(a < b)) throw ParameterError("variation interval must satisfy a < b");

    AdmissibilityReport report;
    report.h_at_a = h(a);
    report.h_at_b = h(b);
    report.endpoints_vanish = std::abs(report.h_at_a) <= tol && std::abs(report.h_at_b) <= tol;
    report.required_exponent = min_variation_exponent(alpha);

    // Six dyadic scales, the largest an eighth of the curve's own span.
    std::vector<double> schedule;
    double eps = (h.hi() - h.lo()) / 8.0;
    for (int k = 0; k < 6; ++k, eps *= 0.5) schedule.push_back(eps);
    report.estimate = estimate_exponent(h, schedule, 64);

    report.exponent_sufficient =
        report.estimate.degenerate ||
        report.estimate.alpha_hat >= report.required_exponent - kExponentSlack;
    report.admissible = report.endpoints_vanish && report.exponent_sufficient;
    return report;
}

AdmissibilityReport is_admissible_variation(const Curve& h, double alpha, double a, double b) {
    return is_admissible_variation(h, alpha, a, b, h.is_closed_form() ? 1e-12 : 0.0);
}

}  // namespace scalevar
