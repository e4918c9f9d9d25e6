#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace gifs {

enum class ScheduleKind { Quadratic, Optimal, Constant, Custom };

// A sequence of grid resolutions n_1..n_N for a grid run on [0,D]^M.
// The per-step snapping accuracy eps_k = D*sqrt(M)/n_k is always derived,
// never stored independently.
struct GridSchedule {
    std::vector<long long> n;
    double D = 0.0;
    int M = 0;
    ScheduleKind kind = ScheduleKind::Custom;
    double target_eps = 0.0;  // meaningful for Optimal only

    std::size_t steps() const { return n.size(); }
    double eps_at(std::size_t i) const {  // 0-based
        return D * std::sqrt(static_cast<double>(M)) /
               static_cast<double>(n[i]);
    }
    std::vector<double> eps() const;
};

// n_k = k^2 for k = 1..steps.
GridSchedule quadratic_schedule(int steps, double D, int M);
// n_k = n for every step.
GridSchedule constant_schedule(long long n, int steps, double D, int M);
GridSchedule custom_schedule(std::vector<long long> n, double D, int M);

// The Lagrange-optimal accuracy profile for reaching a target accuracy eps:
// a geometric sequence eps_k^0 = k_N * C^(k/(beta+1)) over N steps, beta = pM,
// chosen so the accumulated error equals the target exactly while minimizing
// the grid cost proxy f(eps) = sum (1/eps_k)^beta.
struct OptimalPlan {
    double target_eps = 0.0;
    int N = 0;
    std::vector<double> eps0;  // eps_1^0 .. eps_N^0
    double k_N = 0.0;
    // Auxiliaries of the closed-form solution.
    double t = 0.0;   // C^(-beta*N/(beta+1)) - 1
    double K1 = 0.0;  // 1 - C^(beta/(beta+1))
    double K2 = 0.0;  // K1^(-beta-1)
    double K3 = 0.0;  // K2 * eps^(-beta)
    double a = 0.0;   // D*sqrt(M)/eps
    double y = 0.0;   // C^(-N)
    // Context the plan was computed for.
    double C = 0.0;
    double D = 0.0;
    int M = 0;
    int p = 0;
};

// Computes the plan. Requires 0 < target_eps < D*sqrt(M) (throws
// EpsilonTooLarge otherwise) and 0 < C < 1 (throws ContractionViolation).
// N = floor((beta+1) * ln(target_eps/(D*sqrt(M))) / ln(C)) + 1; the
// accumulated-error constraint is re-verified for that integer N.
OptimalPlan optimal_plan(double target_eps, double C, double D, int M, int p);

// Integerizes the plan: n_k = floor(D*sqrt(M)/eps_k^0) + 1, so the realized
// eps_k never exceeds eps_k^0 and the plan's error bound still holds.
GridSchedule schedule_from_plan(const OptimalPlan& plan);

// Accumulated error bound after running the whole schedule against a system
// with contraction constant C:
//   eps_N + C*eps_{N-1} + ... + C^{N-1}*eps_1 + C^N * D*sqrt(M),
// evaluated in descending-power order for numerical stability.
double error_bound(const GridSchedule& schedule, double C);

// ln of the cost proxy f(eps^0) = sum_k (1/eps_k^0)^beta, summed directly in
// log-space (stable even when individual terms overflow a double).
double plan_cost_direct_ln(const OptimalPlan& plan);

// ln of the closed form K3 * (y^(beta/(beta+1)) - 1)^(beta+1) * (y-a)^(-beta)
// evaluated at a given y > a; at y = plan.y this equals the cost of the plan.
double plan_cost_ln_at(const OptimalPlan& plan, double y);

// ln of f(eps) for an arbitrary accuracy profile with the plan's beta.
double profile_cost_ln(const std::vector<double>& eps, int beta);

// Plain-text interchange: one n_k per line.
std::string schedule_to_text(const GridSchedule& schedule);
GridSchedule schedule_from_text(std::string_view text, double D, int M);

}  // namespace gifs
