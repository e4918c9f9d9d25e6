#pragma once

#include <cstddef>

#include "gifs/point_set.hpp"

namespace gifs {

// The pair attaining a directed distance: point `from` (index into the first
// set) whose nearest counterpart in the second set is `to`.
struct Witness {
    std::size_t from = 0;
    std::size_t to = 0;
};

// Exact Hausdorff distance between two finite sets, with the two directed
// components and a witness pair for each.
struct DistanceReport {
    double h = 0.0;
    double directed_12 = 0.0;
    double directed_21 = 0.0;
    Witness witness_12;
    Witness witness_21;
};

// max over a in A of min over b in B of |a - b| (euclidean), computed
// exactly. Large second sets are accelerated with uniform-grid bucketing,
// which prunes but never approximates. Throws EmptyInput on empty sets.
double directed_distance(const PointSet& A, const PointSet& B);

// Symmetric combination h = max of the two directed distances, with
// witnesses. Throws EmptyInput on empty sets.
DistanceReport hausdorff(const PointSet& A, const PointSet& B);

namespace detail {
// Both strategies compute the same exact value; exposed so tests can check
// them against each other on arbitrary sizes. The public entry points pick
// the bucketed path when the second set is large (> 10^4 points).
double directed_brute(const PointSet& A, const PointSet& B, Witness* w);
double directed_bucketed(const PointSet& A, const PointSet& B, Witness* w);
}  // namespace detail

}  // namespace gifs
