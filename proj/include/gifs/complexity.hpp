#pragma once

#include <span>
#include <string>
#include <vector>

namespace gifs {

// Parameters of the closed-form cost models: x0 initial points, L maps,
// order p, dimension M, contraction constant C.
struct CostParams {
    long long x0 = 1;
    int L = 1;
    int p = 2;
    int M = 1;
    double C = 0.5;
    int beta() const { return p * M; }
};

// Cost model of the deterministic algorithm,
//   C_det(eps) = (x0 * L^(1/(p-1))) ^ ((1/eps)^E),  E = ln(p)/ln(1/C).
// The value towers out of every floating-point format almost immediately, so
// the model is kept in factored log form:
//   ln C_det = exponent * ln_base,  exponent = (1/eps)^E.
// Even ln C_det overflows for extreme (eps, C), so exponent is itself carried
// as exponent_ln = E * ln(1/eps); ln_ln() is finite on the whole domain of
// interest whenever ln_base > 0.
struct DetCost {
    double ln_base = 0.0;      // ln(x0 * L^(1/(p-1))), >= 0
    double exponent_ln = 0.0;  // ln((1/eps)^E)

    double exponent() const;   // may overflow to +inf
    double ln() const;         // exponent() * ln_base; may overflow to +inf
    double ln_ln() const;      // exponent_ln + ln(ln_base); -inf iff base == 1
    double value() const;      // exp(ln()); +inf once ln() > ~709
};

// Throws UnsupportedOrder when p < 2 (the p = 1 case has its own model below).
DetCost cost_deterministic(double eps, const CostParams& params);

// Cost model of the grid algorithm,
//   C_grid(eps) = (1 - C^(beta/(beta+1)))^(-beta-1) * (1/eps)^beta.
struct GridCost {
    double ln_coeff = 0.0;  // ln of the C-dependent coefficient
    double ln = 0.0;        // ln C_grid

    double coefficient() const;
    double value() const;
};

GridCost cost_grid(double eps, const CostParams& params);

// Cost model of the classical (order 1) iterated-function-system algorithm,
//   C(eps) = (1/eps)^(ln L / ln(1/C)).
struct IfsCost {
    double inv_eps = 0.0;
    double exponent = 0.0;  // ln L / ln(1/C)
    double ln = 0.0;

    double value() const;   // pow(inv_eps, exponent): exact at exponent 1
};

IfsCost cost_ifs(double eps, int L, double C);

// ln of the closed-form point-count bound
//   x_k <= L^(-1/(p-1)) * (x0 * L^(1/(p-1)))^(p^k),
// which dominates the exact recurrence below. Requires p >= 2.
double xk_bound_ln(int k, const CostParams& params);

// ln of the exact recurrence x_k = L * x_{k-1}^p with x_0 = x0.
double xk_recurrence_ln(int k, const CostParams& params);

// Grid-versus-deterministic comparison at each accuracy: ln C_grid, ln C_det
// and their difference (which tends to -inf as eps -> 0: the grid algorithm
// eventually wins by any margin).
struct RatioRow {
    double eps = 0.0;
    double ln_grid = 0.0;
    double ln_det = 0.0;
    double ln_ratio = 0.0;  // ln_grid - ln_det
};

std::vector<RatioRow> ratio_table(std::span<const double> eps_list,
                                  const CostParams& params);

// CSV with header "eps,ln_cost_grid,ln_cost_det,ln_ratio", one row per
// accuracy, every number printed with 17 significant digits.
std::string ratio_table_csv(std::span<const double> eps_list,
                            const CostParams& params);

}  // namespace gifs
