#include "gifs/system.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gifs/errors.hpp"

namespace gifs {

std::vector<Interval> interval_image(const AffineMap& f, double D) {
    const int M = f.dimension();
    const int p = f.order();
    std::vector<Interval> out(static_cast<std::size_t>(M));
    for (int r = 0; r < M; ++r) {
        double lo = f.offset[r];
        double hi = f.offset[r];
        for (int j = 0; j < p; ++j) {
            const Vec& row = f.blocks[j][r];
            for (int c = 0; c < M; ++c) {
                // Each argument coordinate ranges over [0, D]: a coefficient
                // contributes coeff*D with the sign deciding which bound.
                const double contrib = row[c] * D;
                if (contrib >= 0.0) {
                    hi += contrib;
                } else {
                    lo += contrib;
                }
            }
        }
        out[static_cast<std::size_t>(r)] = Interval{lo, hi};
    }
    return out;
}

GifsSystem build_system(std::vector<AffineMap> maps, double D, int p, int M,
                        RangePolicy policy) {
    if (maps.empty()) {
        throw DimensionMismatch("a system needs at least one map");
    }
    if (M < 1 || p < 1) {
        throw DimensionMismatch("system dimensions must be positive, got M=" +
                                std::to_string(M) + " p=" + std::to_string(p));
    }
    if (!(D > 0.0) || !std::isfinite(D)) {
        throw DimensionMismatch("cube side D must be a positive finite real");
    }
    for (const AffineMap& f : maps) {
        validate_map(f, M, p);
    }

    GifsSystem system;
    system.M = M;
    system.p = p;
    system.D = D;
    system.range_policy = policy;
    system.lip_bounds.reserve(maps.size());
    double C = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const double bound = lip_bound(maps[i]);
        system.lip_bounds.push_back(bound);
        C = std::max(C, bound);
        if (bound >= 1.0) {
            throw ContractionViolation(
                "map " + std::to_string(i + 1) +
                    " has certified Lipschitz bound " + std::to_string(bound) +
                    " >= 1; the system is not a contraction",
                bound);
        }
    }
    system.C = C;

    if (policy == RangePolicy::Strict) {
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const auto hull = interval_image(maps[i], D);
            for (int r = 0; r < M; ++r) {
                const Interval& iv = hull[static_cast<std::size_t>(r)];
                if (iv.lo < 0.0 || iv.hi > D) {
                    throw RangeViolation(
                        "map " + std::to_string(i + 1) + " coordinate " +
                        std::to_string(r + 1) + " can reach [" +
                        std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                        "], outside [0, " + std::to_string(D) + "]");
                }
            }
        }
    }

    system.maps = std::move(maps);
    return system;
}

}  // namespace gifs
