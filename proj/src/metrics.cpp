#include "gifs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gifs/errors.hpp"

namespace gifs {

namespace {

constexpr std::size_t kBucketThreshold = 10'000;

// Squared euclidean distance with a fixed evaluation order, so the brute and
// bucketed strategies produce bitwise-identical results.
inline double dist2(const double* a, const double* b, int M) {
    double acc = 0.0;
    for (int c = 0; c < M; ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
    }
    return acc;
}

// Uniform-grid bucketing of a point set: cells in a box around the data,
// CSR-style storage of point ids per cell. Nearest-neighbor queries expand
// Chebyshev rings of cells around the query's home cell and stop once no
// unexamined cell can hold anything closer; the pruning is conservative, so
// results are exact.
class BucketGrid {
public:
    BucketGrid(const PointSet& B) : M_(B.dimension()), pts_(B.coords().data()) {
        const std::size_t n = B.size();
        lo_.assign(M_, std::numeric_limits<double>::infinity());
        hi_.assign(M_, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            const double* p = pts_ + i * M_;
            for (int c = 0; c < M_; ++c) {
                lo_[c] = std::min(lo_[c], p[c]);
                hi_[c] = std::max(hi_[c], p[c]);
            }
        }
        // Aim for roughly one point per cell along each non-degenerate axis.
        const double per_axis =
            std::pow(static_cast<double>(n), 1.0 / static_cast<double>(M_));
        const long long g = std::clamp<long long>(
            static_cast<long long>(std::ceil(per_axis)), 1, 2048);
        dims_.assign(M_, 1);
        step_.assign(M_, 0.0);
        cell_min_ = std::numeric_limits<double>::infinity();
        std::size_t cells = 1;
        for (int c = 0; c < M_; ++c) {
            if (hi_[c] > lo_[c]) {
                dims_[c] = g;
                step_[c] = (hi_[c] - lo_[c]) / static_cast<double>(g);
                cell_min_ = std::min(cell_min_, step_[c]);
            }
            cells *= static_cast<std::size_t>(dims_[c]);
        }
        if (!std::isfinite(cell_min_)) cell_min_ = 0.0;  // fully degenerate

        counts_.assign(cells + 1, 0);
        std::vector<std::size_t> cell_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            cell_of[i] = cell_id(pts_ + i * M_);
            ++counts_[cell_of[i] + 1];
        }
        for (std::size_t c = 1; c <= cells; ++c) counts_[c] += counts_[c - 1];
        ids_.resize(n);
        std::vector<std::size_t> cursor(counts_.begin(), counts_.end() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            ids_[cursor[cell_of[i]]++] = i;
        }
    }

    // Exact nearest neighbor of q. Reports false (abandoning the query) as
    // soon as some point is found within sqrt(prune2): the true minimum is
    // then <= prune2, so the query cannot raise the caller's running maximum.
    bool nearest(const double* q, double prune2, double& best2_out,
                 std::size_t& best_id_out) const {
        std::vector<long long> home(M_);
        long long max_ring = 0;
        for (int c = 0; c < M_; ++c) {
            long long h = 0;
            if (dims_[c] > 1) {
                h = static_cast<long long>(
                    std::floor((q[c] - lo_[c]) / step_[c]));
                h = std::clamp<long long>(h, 0, dims_[c] - 1);
            }
            home[c] = h;
            max_ring = std::max(max_ring, std::max(h, dims_[c] - 1 - h));
        }
        double best2 = std::numeric_limits<double>::infinity();
        std::size_t best_id = 0;
        std::vector<long long> cell(M_);
        for (long long r = 0; r <= max_ring; ++r) {
            scan_ring(q, home, r, cell, best2, best_id);
            if (prune2 >= 0.0 && best2 <= prune2) {
                return false;  // cannot matter to the caller's maximum
            }
            // Every unexamined cell is at ring >= r+1, so it differs from
            // q's home by more than r cells along some live axis; any point
            // there is at distance >= r * cell_min_ from q. Once the current
            // best is within that floor, it is the exact minimum.
            const double floor_dist = static_cast<double>(r) * cell_min_;
            if (best2 <= floor_dist * floor_dist &&
                best2 < std::numeric_limits<double>::infinity()) {
                break;
            }
        }
        best2_out = best2;
        best_id_out = best_id;
        return true;
    }

private:
    std::size_t cell_id(const double* p) const {
        std::size_t id = 0;
        for (int c = 0; c < M_; ++c) {
            long long k = 0;
            if (dims_[c] > 1) {
                k = static_cast<long long>(std::floor((p[c] - lo_[c]) / step_[c]));
                k = std::clamp<long long>(k, 0, dims_[c] - 1);
            }
            id = id * static_cast<std::size_t>(dims_[c]) +
                 static_cast<std::size_t>(k);
        }
        return id;
    }

    void scan_cell(const double* q, const std::vector<long long>& cell,
                   double& best2, std::size_t& best_id) const {
        std::size_t id = 0;
        for (int c = 0; c < M_; ++c) {
            id = id * static_cast<std::size_t>(dims_[c]) +
                 static_cast<std::size_t>(cell[c]);
        }
        for (std::size_t k = counts_[id]; k < counts_[id + 1]; ++k) {
            const std::size_t i = ids_[k];
            const double d2 = dist2(q, pts_ + i * M_, M_);
            if (d2 < best2) {
                best2 = d2;
                best_id = i;
            }
        }
    }

    // Visits every in-range cell at Chebyshev distance exactly r from home:
    // axis `f` is the first axis pinned to home +- r, earlier axes stay
    // strictly inside the ring, later axes range freely.
    void scan_ring(const double* q, const std::vector<long long>& home,
                   long long r, std::vector<long long>& cell, double& best2,
                   std::size_t& best_id) const {
        if (r == 0) {
            cell = home;
            scan_cell(q, cell, best2, best_id);
            return;
        }
        for (int f = 0; f < M_; ++f) {
            for (int side = 0; side < 2; ++side) {
                const long long pinned =
                    home[f] + (side == 0 ? -r : r);
                if (pinned < 0 || pinned >= dims_[f]) continue;
                cell[f] = pinned;
                scan_ring_rec(q, home, r, cell, 0, f, best2, best_id);
            }
        }
    }

    void scan_ring_rec(const double* q, const std::vector<long long>& home,
                       long long r, std::vector<long long>& cell, int axis,
                       int pinned_axis, double& best2,
                       std::size_t& best_id) const {
        if (axis == M_) {
            scan_cell(q, cell, best2, best_id);
            return;
        }
        if (axis == pinned_axis) {
            scan_ring_rec(q, home, r, cell, axis + 1, pinned_axis, best2,
                          best_id);
            return;
        }
        // Axes before the pinned one stay strictly within the ring so each
        // ring cell is enumerated exactly once.
        const long long spread = axis < pinned_axis ? r - 1 : r;
        const long long from = std::max<long long>(home[axis] - spread, 0);
        const long long to =
            std::min<long long>(home[axis] + spread, dims_[axis] - 1);
        for (long long v = from; v <= to; ++v) {
            cell[axis] = v;
            scan_ring_rec(q, home, r, cell, axis + 1, pinned_axis, best2,
                          best_id);
        }
    }

    int M_;
    const double* pts_;
    std::vector<double> lo_, hi_, step_;
    std::vector<long long> dims_;
    double cell_min_ = 0.0;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> ids_;
};

void require_compatible(const PointSet& A, const PointSet& B) {
    if (A.empty() || B.empty()) {
        throw EmptyInput("distance of an empty point set is undefined");
    }
    if (A.dimension() != B.dimension()) {
        throw DimensionMismatch("point sets have different dimensions");
    }
}

}  // namespace

namespace detail {

double directed_brute(const PointSet& A, const PointSet& B, Witness* w) {
    const int M = A.dimension();
    const double* as = A.coords().data();
    const double* bs = B.coords().data();
    const std::size_t na = A.size();
    const std::size_t nb = B.size();
    double max2 = -1.0;
    Witness best{0, 0};
    for (std::size_t i = 0; i < na; ++i) {
        const double* a = as + i * M;
        double min2 = std::numeric_limits<double>::infinity();
        std::size_t min_j = 0;
        for (std::size_t j = 0; j < nb; ++j) {
            const double d2 = dist2(a, bs + j * M, M);
            if (d2 < min2) {
                min2 = d2;
                min_j = j;
                // This point can no longer raise the maximum: its true
                // minimum is <= min2 <= max2.
                if (min2 <= max2) break;
            }
        }
        if (min2 > max2) {
            max2 = min2;
            best = Witness{i, min_j};
        }
    }
    if (w) *w = best;
    return std::sqrt(max2);
}

double directed_bucketed(const PointSet& A, const PointSet& B, Witness* w) {
    const int M = A.dimension();
    const double* as = A.coords().data();
    const std::size_t na = A.size();
    BucketGrid grid(B);
    double max2 = -1.0;
    Witness best{0, 0};
    for (std::size_t i = 0; i < na; ++i) {
        double min2 = 0.0;
        std::size_t min_j = 0;
        if (!grid.nearest(as + i * M, max2, min2, min_j)) continue;
        if (min2 > max2) {
            max2 = min2;
            best = Witness{i, min_j};
        }
    }
    if (w) *w = best;
    return std::sqrt(max2);
}

}  // namespace detail

double directed_distance(const PointSet& A, const PointSet& B) {
    require_compatible(A, B);
    if (B.size() > kBucketThreshold) {
        return detail::directed_bucketed(A, B, nullptr);
    }
    return detail::directed_brute(A, B, nullptr);
}

DistanceReport hausdorff(const PointSet& A, const PointSet& B) {
    require_compatible(A, B);
    DistanceReport report;
    if (B.size() > kBucketThreshold) {
        report.directed_12 = detail::directed_bucketed(A, B, &report.witness_12);
    } else {
        report.directed_12 = detail::directed_brute(A, B, &report.witness_12);
    }
    if (A.size() > kBucketThreshold) {
        report.directed_21 = detail::directed_bucketed(B, A, &report.witness_21);
    } else {
        report.directed_21 = detail::directed_brute(B, A, &report.witness_21);
    }
    report.h = std::max(report.directed_12, report.directed_21);
    return report;
}

}  // namespace gifs
