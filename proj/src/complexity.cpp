#include "gifs/complexity.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "gifs/errors.hpp"

namespace gifs {

namespace {

void require_common(double eps, const CostParams& params) {
    if (!(params.C > 0.0) || !(params.C < 1.0)) {
        throw ContractionViolation(
            "cost models need a contraction constant in (0, 1)", params.C);
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw EpsilonTooLarge("cost models need a finite accuracy eps > 0");
    }
    if (params.L < 1 || params.x0 < 1 || params.M < 1 || params.p < 1) {
        throw Error("cost models need L >= 1, x0 >= 1, M >= 1, p >= 1");
    }
}

std::string fmt17(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace

double DetCost::exponent() const { return std::exp(exponent_ln); }

double DetCost::ln() const {
    if (ln_base == 0.0) return 0.0;  // base 1: the cost is identically 1
    return exponent() * ln_base;
}

double DetCost::ln_ln() const { return exponent_ln + std::log(ln_base); }

double DetCost::value() const { return std::exp(ln()); }

DetCost cost_deterministic(double eps, const CostParams& params) {
    if (params.p < 2) {
        throw UnsupportedOrder(
            "the deterministic cost model is defined for order p >= 2; use "
            "cost_ifs for p = 1");
    }
    require_common(eps, params);
    DetCost cost;
    cost.ln_base = std::log(static_cast<double>(params.x0)) +
                   std::log(static_cast<double>(params.L)) /
                       static_cast<double>(params.p - 1);
    const double E = std::log(static_cast<double>(params.p)) /
                     (-std::log(params.C));
    cost.exponent_ln = E * (-std::log(eps));
    return cost;
}

double GridCost::coefficient() const { return std::exp(ln_coeff); }

double GridCost::value() const { return std::exp(ln); }

GridCost cost_grid(double eps, const CostParams& params) {
    require_common(eps, params);
    const double b = static_cast<double>(params.beta());
    // 1 - C^(b/(b+1)), evaluated as -expm1 to keep precision for C near 1.
    const double k1 = -std::expm1(b / (b + 1.0) * std::log(params.C));
    GridCost cost;
    cost.ln_coeff = -(b + 1.0) * std::log(k1);
    cost.ln = cost.ln_coeff - b * std::log(eps);
    return cost;
}

double IfsCost::value() const { return std::pow(inv_eps, exponent); }

IfsCost cost_ifs(double eps, int L, double C) {
    CostParams probe;
    probe.L = L;
    probe.C = C;
    require_common(eps, probe);
    IfsCost cost;
    cost.inv_eps = 1.0 / eps;
    cost.exponent = std::log(static_cast<double>(L)) / (-std::log(C));
    cost.ln = cost.exponent * std::log(cost.inv_eps);
    return cost;
}

double xk_bound_ln(int k, const CostParams& params) {
    if (params.p < 2) {
        throw UnsupportedOrder("the point-count bound needs order p >= 2");
    }
    if (k < 0) throw Error("the point-count bound needs k >= 0");
    require_common(1.0, params);
    const double ln_l = std::log(static_cast<double>(params.L));
    const double ln_base =
        std::log(static_cast<double>(params.x0)) +
        ln_l / static_cast<double>(params.p - 1);
    double pk = 1.0;
    for (int i = 0; i < k; ++i) pk *= static_cast<double>(params.p);
    return pk * ln_base - ln_l / static_cast<double>(params.p - 1);
}

double xk_recurrence_ln(int k, const CostParams& params) {
    if (k < 0) throw Error("the point-count recurrence needs k >= 0");
    require_common(1.0, params);
    const double ln_l = std::log(static_cast<double>(params.L));
    double lx = std::log(static_cast<double>(params.x0));
    for (int i = 0; i < k; ++i) {
        lx = ln_l + static_cast<double>(params.p) * lx;
    }
    return lx;
}

std::vector<RatioRow> ratio_table(std::span<const double> eps_list,
                                  const CostParams& params) {
    std::vector<RatioRow> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        const DetCost det = cost_deterministic(eps, params);
        const GridCost grid = cost_grid(eps, params);
        RatioRow row;
        row.eps = eps;
        row.ln_grid = grid.ln;
        row.ln_det = det.ln();
        row.ln_ratio = row.ln_grid - row.ln_det;
        rows.push_back(row);
    }
    return rows;
}

std::string ratio_table_csv(std::span<const double> eps_list,
                            const CostParams& params) {
    std::string out = "eps,ln_cost_grid,ln_cost_det,ln_ratio\n";
    for (const RatioRow& row : ratio_table(eps_list, params)) {
        out += fmt17(row.eps);
        out += ',';
        out += fmt17(row.ln_grid);
        out += ',';
        out += fmt17(row.ln_det);
        out += ',';
        out += fmt17(row.ln_ratio);
        out += '\n';
    }
    return out;
}

}  // namespace gifs
