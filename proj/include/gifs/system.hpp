#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gifs/affine_map.hpp"

namespace gifs {

// What build_system requires of each map's range over the cube.
//   Strict: interval certification must prove f(([0,D]^M)^p) is inside
//           [0,D]^M; violations are rejected.
//   Clamp:  images are clamped to [0,D]^M coordinate-wise at evaluation time
//           (the clamp is 1-Lipschitz, so certified contraction bounds remain
//           valid for the clamped maps); escapes beyond a small drift window
//           are counted as warnings in run statistics.
enum class RangePolicy { Strict, Clamp };

// A generalized iterated function system of order p on [0,D]^M:
// L affine contractions f_i : ([0,D]^M)^p -> [0,D]^M with certified
// per-map Lipschitz bounds and overall contraction constant C < 1.
struct GifsSystem {
    int M = 0;
    int p = 0;
    double D = 0.0;
    std::vector<AffineMap> maps;
    std::vector<double> lip_bounds;  // certified, one per map
    double C = 0.0;                  // max of lip_bounds
    RangePolicy range_policy = RangePolicy::Strict;

    std::size_t L() const { return maps.size(); }
    int beta() const { return p * M; }
    // Diameter of the cube, D * sqrt(M): the coarsest possible error.
    double diameter() const { return D * std::sqrt(static_cast<double>(M)); }
};

struct Interval {
    double lo;
    double hi;
};

// Interval-arithmetic image of f over ([0,D]^M)^p, one interval per output
// coordinate: offset + sum of each coefficient's min/max contribution over
// argument coordinates ranging in [0, D].
std::vector<Interval> interval_image(const AffineMap& f, double D);

// Validates shapes, certifies per-map Lipschitz bounds (lip_bound) and range
// containment (interval_image, when policy is Strict), and assembles the
// system. Throws DimensionMismatch, ContractionViolation (C >= 1), or
// RangeViolation.
GifsSystem build_system(std::vector<AffineMap> maps, double D, int p, int M,
                        RangePolicy policy = RangePolicy::Strict);

}  // namespace gifs
