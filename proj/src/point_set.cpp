#include "gifs/point_set.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <string>

#include "gifs/errors.hpp"

namespace gifs {

namespace {

// Lexicographic sort + adjacent dedup of N rows of M entries. Fast paths for
// M = 1 and M = 2 (the common cases, where rows pack into native values);
// index-permutation sort otherwise.
template <typename T>
void sort_unique_rows(int M, std::vector<T>& flat) {
    if (flat.empty()) return;
    const std::size_t n = flat.size() / static_cast<std::size_t>(M);
    if (M == 1) {
        std::sort(flat.begin(), flat.end());
        flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
        return;
    }
    if (M == 2) {
        struct Row {
            T a, b;
            bool operator<(const Row& o) const {
                return a < o.a || (a == o.a && b < o.b);
            }
            bool operator==(const Row& o) const { return a == o.a && b == o.b; }
        };
        static_assert(sizeof(Row) == 2 * sizeof(T));
        Row* rows = reinterpret_cast<Row*>(flat.data());
        std::sort(rows, rows + n);
        Row* end = std::unique(rows, rows + n);
        flat.resize(static_cast<std::size_t>(end - rows) * 2);
        return;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const T* data = flat.data();
    auto row_less = [&](std::size_t x, std::size_t y) {
        const T* rx = data + x * M;
        const T* ry = data + y * M;
        for (int c = 0; c < M; ++c) {
            if (rx[c] < ry[c]) return true;
            if (ry[c] < rx[c]) return false;
        }
        return false;
    };
    auto row_eq = [&](std::size_t x, std::size_t y) {
        const T* rx = data + x * M;
        const T* ry = data + y * M;
        for (int c = 0; c < M; ++c) {
            if (rx[c] != ry[c]) return false;
        }
        return true;
    };
    std::sort(order.begin(), order.end(), row_less);
    order.erase(std::unique(order.begin(), order.end(), row_eq), order.end());
    std::vector<T> out;
    out.reserve(order.size() * static_cast<std::size_t>(M));
    for (std::size_t i : order) {
        const T* r = data + i * M;
        out.insert(out.end(), r, r + M);
    }
    flat = std::move(out);
}

void require_multiple(std::size_t size, int M, const char* what) {
    if (M < 1) {
        throw DimensionMismatch(std::string(what) +
                                ": dimension must be positive");
    }
    if (size % static_cast<std::size_t>(M) != 0) {
        throw DimensionMismatch(std::string(what) + ": " +
                                std::to_string(size) +
                                " values are not a multiple of M=" +
                                std::to_string(M));
    }
}

}  // namespace

void sort_unique_raw(int M, std::vector<double>& flat) {
    // Normalize -0.0 so bitwise dedup coincides with value dedup; all
    // remaining coordinates are nonnegative, where value order = bit order.
    for (double& v : flat) {
        if (v == 0.0) v = 0.0;
    }
    sort_unique_rows(M, flat);
}

void sort_unique_lattice(int M, std::vector<long long>& flat) {
    sort_unique_rows(M, flat);
}

PointSet from_sorted_unique_raw(int M, std::vector<double>&& flat) {
    PointSet s;
    s.M_ = M;
    s.repr_ = PointSet::Repr::Raw;
    s.coords_ = std::move(flat);
    return s;
}

PointSet from_sorted_unique_lattice(int M, long long n, double D,
                                    std::vector<long long>&& flat) {
    PointSet s;
    s.M_ = M;
    s.repr_ = PointSet::Repr::Lattice;
    s.n_ = n;
    s.D_ = D;
    s.coords_.reserve(flat.size());
    for (long long g : flat) {
        s.coords_.push_back(lattice_coord(g, n, D));
    }
    s.indices_ = std::move(flat);
    return s;
}

PointSet PointSet::raw(int M, std::vector<double> flat_coords) {
    require_multiple(flat_coords.size(), M, "PointSet::raw");
    sort_unique_raw(M, flat_coords);
    return from_sorted_unique_raw(M, std::move(flat_coords));
}

PointSet PointSet::lattice(int M, long long n, double D,
                           std::vector<long long> flat_indices) {
    require_multiple(flat_indices.size(), M, "PointSet::lattice");
    if (n < 1) {
        throw DimensionMismatch("PointSet::lattice: resolution must be >= 1");
    }
    sort_unique_lattice(M, flat_indices);
    return from_sorted_unique_lattice(M, n, D, std::move(flat_indices));
}

PointSet PointSet::single(const Vec& point) {
    return raw(static_cast<int>(point.size()), point);
}

PointSet PointSet::cube_center(int M, double D) {
    return raw(M, Vec(static_cast<std::size_t>(M), D / 2.0));
}

bool PointSet::within_cube(double D, double tol) const {
    for (double v : coords_) {
        if (!(v >= -tol && v <= D + tol)) return false;
    }
    return true;
}

}  // namespace gifs
