#include "gifs/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "gifs/errors.hpp"

namespace gifs {

namespace {

void require_geometry(double D, int M) {
    if (M < 1 || !(D > 0.0) || !std::isfinite(D)) {
        throw DimensionMismatch(
            "a schedule needs M >= 1 and a positive finite D");
    }
}

double diameter(double D, int M) {
    return D * std::sqrt(static_cast<double>(M));
}

// ln(sum exp(terms)) without overflow.
double log_sum_exp(const std::vector<double>& terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (double t : terms) m = std::max(m, t);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

}  // namespace

std::vector<double> GridSchedule::eps() const {
    std::vector<double> out;
    out.reserve(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(eps_at(i));
    return out;
}

GridSchedule quadratic_schedule(int steps, double D, int M) {
    require_geometry(D, M);
    if (steps < 1) throw DimensionMismatch("a schedule needs steps >= 1");
    GridSchedule s;
    s.D = D;
    s.M = M;
    s.kind = ScheduleKind::Quadratic;
    s.n.reserve(static_cast<std::size_t>(steps));
    for (long long k = 1; k <= steps; ++k) s.n.push_back(k * k);
    return s;
}

GridSchedule constant_schedule(long long n, int steps, double D, int M) {
    require_geometry(D, M);
    if (steps < 1) throw DimensionMismatch("a schedule needs steps >= 1");
    if (n < 1) throw DimensionMismatch("grid resolution must be >= 1");
    GridSchedule s;
    s.D = D;
    s.M = M;
    s.kind = ScheduleKind::Constant;
    s.n.assign(static_cast<std::size_t>(steps), n);
    return s;
}

GridSchedule custom_schedule(std::vector<long long> n, double D, int M) {
    require_geometry(D, M);
    if (n.empty()) throw DimensionMismatch("a schedule needs steps >= 1");
    for (long long v : n) {
        if (v < 1) throw DimensionMismatch("grid resolution must be >= 1");
    }
    GridSchedule s;
    s.D = D;
    s.M = M;
    s.kind = ScheduleKind::Custom;
    s.n = std::move(n);
    return s;
}

OptimalPlan optimal_plan(double target_eps, double C, double D, int M, int p) {
    require_geometry(D, M);
    if (p < 1) throw DimensionMismatch("order p must be >= 1");
    if (!(C > 0.0) || !(C < 1.0)) {
        throw ContractionViolation(
            "optimal plans need a contraction constant in (0, 1), got " +
                std::to_string(C),
            C);
    }
    const double diam = diameter(D, M);
    if (!(target_eps > 0.0) || !(target_eps < diam)) {
        throw EpsilonTooLarge(
            "target accuracy must lie strictly between 0 and the cube "
            "diameter " +
            std::to_string(diam) + ", got " + std::to_string(target_eps));
    }

    OptimalPlan plan;
    plan.target_eps = target_eps;
    plan.C = C;
    plan.D = D;
    plan.M = M;
    plan.p = p;

    const int beta = p * M;
    const double b = static_cast<double>(beta);
    const double ln_c = std::log(C);

    // Smallest step count whose geometric profile can reach the target.
    plan.N = static_cast<int>(std::floor(
                 (b + 1.0) * std::log(target_eps / diam) / ln_c)) +
             1;
    const double n = static_cast<double>(plan.N);

    plan.a = diam / target_eps;                       // > 1 by the check above
    plan.y = std::exp(-n * ln_c);                     // C^(-N)
    plan.t = std::expm1(-(b / (b + 1.0)) * n * ln_c); // C^(-bN/(b+1)) - 1
    plan.K1 = -std::expm1((b / (b + 1.0)) * ln_c);    // 1 - C^(b/(b+1))
    plan.K2 = std::exp(-(b + 1.0) * std::log(plan.K1));
    plan.K3 = std::exp(-(b + 1.0) * std::log(plan.K1) -
                       b * std::log(target_eps));

    // eps/C^N in log-space: N can be large enough that C^N underflows.
    const double eps_over_cn = std::exp(std::log(target_eps) - n * ln_c);
    plan.k_N = plan.K1 / plan.t * (eps_over_cn - diam);

    plan.eps0.reserve(static_cast<std::size_t>(plan.N));
    for (int k = 1; k <= plan.N; ++k) {
        plan.eps0.push_back(plan.k_N *
                            std::exp(static_cast<double>(k) * ln_c / (b + 1.0)));
    }

    // Re-verify the accumulated-error constraint for the integer N.
    double acc = diam;
    for (double e : plan.eps0) acc = acc * C + e;
    if (!(std::abs(acc - target_eps) <= 1e-9 * target_eps)) {
        throw Error("optimal plan failed its accumulated-error constraint: " +
                    std::to_string(acc) + " vs target " +
                    std::to_string(target_eps));
    }
    return plan;
}

GridSchedule schedule_from_plan(const OptimalPlan& plan) {
    GridSchedule s;
    s.D = plan.D;
    s.M = plan.M;
    s.kind = ScheduleKind::Optimal;
    s.target_eps = plan.target_eps;
    const double diam = diameter(plan.D, plan.M);
    s.n.reserve(plan.eps0.size());
    for (double e : plan.eps0) {
        s.n.push_back(static_cast<long long>(std::floor(diam / e)) + 1);
    }
    return s;
}

double error_bound(const GridSchedule& schedule, double C) {
    if (schedule.n.empty()) {
        throw DimensionMismatch("error bound of an empty schedule");
    }
    if (!(C >= 0.0) || !(C < 1.0)) {
        throw ContractionViolation(
            "error bounds need a contraction constant in [0, 1), got " +
                std::to_string(C),
            C);
    }
    double acc = diameter(schedule.D, schedule.M);
    for (std::size_t i = 0; i < schedule.n.size(); ++i) {
        acc = acc * C + schedule.eps_at(i);
    }
    return acc;
}

double profile_cost_ln(const std::vector<double>& eps, int beta) {
    std::vector<double> terms;
    terms.reserve(eps.size());
    for (double e : eps) {
        terms.push_back(-static_cast<double>(beta) * std::log(e));
    }
    return log_sum_exp(terms);
}

double plan_cost_direct_ln(const OptimalPlan& plan) {
    return profile_cost_ln(plan.eps0, plan.p * plan.M);
}

double plan_cost_ln_at(const OptimalPlan& plan, double y) {
    const double b = static_cast<double>(plan.p * plan.M);
    // ln K3 recomputed in log form (the stored K3 may overflow for extreme
    // parameters).
    const double ln_k3 =
        -(b + 1.0) * std::log(plan.K1) - b * std::log(plan.target_eps);
    const double y_pow = std::exp((b / (b + 1.0)) * std::log(y));
    return ln_k3 + (b + 1.0) * std::log(y_pow - 1.0) -
           b * std::log(y - plan.a);
}

std::string schedule_to_text(const GridSchedule& schedule) {
    std::string out;
    for (long long v : schedule.n) {
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

GridSchedule schedule_from_text(std::string_view text, double D, int M) {
    std::vector<long long> n;
    int line_no = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        // Strip comments and surrounding whitespace.
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos) {
            const std::size_t last = line.find_last_not_of(" \t\r");
            std::string_view token = line.substr(first, last - first + 1);
            long long value = 0;
            const auto [ptr, ec] = std::from_chars(
                token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size() ||
                value < 1) {
                throw SyntaxError(line_no, static_cast<int>(first) + 1,
                                  "a positive integer grid resolution");
            }
            n.push_back(value);
        }
        if (eol == text.size()) break;
        pos = eol + 1;
        ++line_no;
    }
    if (n.empty()) {
        throw SyntaxError(1, 1, "at least one grid resolution");
    }
    return custom_schedule(std::move(n), D, M);
}

}  // namespace gifs
