#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gifs/affine_map.hpp"

namespace gifs {

// A finite set of points in [0,D]^M with set semantics: construction
// deduplicates (bitwise, after normalizing -0.0 to +0.0) and sorts points
// lexicographically, so equal sets have identical storage and iteration
// order is canonical.
//
// A set may additionally carry lattice structure: every point is
// (D/n) * g for an integer index vector g with 0 <= g_i <= n (the index n
// itself materializes as exactly D). Lattice sets keep their index vectors;
// index order coincides with coordinate order because the index-to-coordinate
// map is increasing per axis.
class PointSet {
public:
    enum class Repr { Raw, Lattice };

    PointSet() = default;

    // Builds a raw set from flat coordinates (size must be a multiple of M).
    static PointSet raw(int M, std::vector<double> flat_coords);
    // Builds a lattice set from flat integer indices (values in [0, n]).
    static PointSet lattice(int M, long long n, double D,
                            std::vector<long long> flat_indices);
    static PointSet single(const Vec& point);
    // The default seed: the cube center (D/2, ..., D/2).
    static PointSet cube_center(int M, double D);

    int dimension() const { return M_; }
    Repr repr() const { return repr_; }
    bool is_lattice() const { return repr_ == Repr::Lattice; }
    std::size_t size() const { return M_ ? coords_.size() / M_ : 0; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * M_, static_cast<std::size_t>(M_)};
    }
    std::span<const long long> index(std::size_t i) const {
        return {indices_.data() + i * M_, static_cast<std::size_t>(M_)};
    }
    const std::vector<double>& coords() const { return coords_; }
    const std::vector<long long>& indices() const { return indices_; }
    long long grid_n() const { return n_; }
    double grid_D() const { return D_; }

    // Content equality: same dimension and identical canonical coordinates.
    // Lattice structure is not compared, so a lattice set equals the raw set
    // with the same points.
    bool operator==(const PointSet& other) const {
        return M_ == other.M_ && coords_ == other.coords_;
    }

    // True if every coordinate lies in [-tol, D + tol].
    bool within_cube(double D, double tol = 0.0) const;

private:
    int M_ = 0;
    Repr repr_ = Repr::Raw;
    std::vector<double> coords_;     // size() * M_, sorted lexicographically
    long long n_ = 0;                // lattice resolution (Lattice only)
    double D_ = 0.0;                 // cube side (Lattice only)
    std::vector<long long> indices_; // size() * M_ (Lattice only)

    friend PointSet from_sorted_unique_raw(int, std::vector<double>&&);
    friend PointSet from_sorted_unique_lattice(int, long long, double,
                                               std::vector<long long>&&);
};

// The coordinate of lattice index g at resolution n on [0, D]; g == n
// materializes as exactly D so the cube boundary never drifts.
inline double lattice_coord(long long g, long long n, double D) {
    return g == n ? D : (D / static_cast<double>(n)) * static_cast<double>(g);
}

// In-place canonicalization helpers shared by PointSet and the step engine.
// They sort rows of `flat` (N rows of M entries) lexicographically and drop
// bitwise-duplicate rows. Raw rows are -0.0-normalized first.
void sort_unique_raw(int M, std::vector<double>& flat);
void sort_unique_lattice(int M, std::vector<long long>& flat);

// Trusted constructors for data already canonicalized by the helpers above.
PointSet from_sorted_unique_raw(int M, std::vector<double>&& flat);
PointSet from_sorted_unique_lattice(int M, long long n, double D,
                                    std::vector<long long>&& flat);

}  // namespace gifs
