#pragma once

#include <span>
#include <vector>

namespace gifs {

using Vec = std::vector<double>;
// Row-major square matrix: Mat[r][c].
using Mat = std::vector<Vec>;

// One affine contraction candidate f : (R^M)^p -> R^M,
//   f(u_1, ..., u_p) = blocks[0]*u_1 + ... + blocks[p-1]*u_p + offset.
// Shape and finiteness are enforced by validate_map / build_system.
struct AffineMap {
    std::vector<Mat> blocks;  // p matrices, each M x M
    Vec offset;               // length M

    int dimension() const { return static_cast<int>(offset.size()); }
    int order() const { return static_cast<int>(blocks.size()); }

    bool operator==(const AffineMap& other) const = default;
};

// Throws DimensionMismatch if the map is not p blocks of M x M finite entries
// with a finite offset of length M.
void validate_map(const AffineMap& f, int M, int p);

// Evaluates f at the argument tuple, exactly as written; no clamping.
// Accumulation order is fixed (offset, then blocks in order, columns
// ascending) so results are bit-reproducible.
Vec apply_map(const AffineMap& f, std::span<const Vec> args);

// Largest singular value of a square matrix. Closed form for M <= 2;
// power iteration on A^T A (tolerance 1e-12, at most 10^4 iterations) above.
double sigma_max(const Mat& a);

// Certified upper bound on the Lipschitz constant of f from ((R^M)^p, d_max)
// to (R^M, euclidean): sum_j sigma_max(blocks[j]), since
// |sum_j A_j (u_j - v_j)| <= (sum_j ||A_j||_2) * max_j |u_j - v_j|.
double lip_bound(const AffineMap& f);

}  // namespace gifs
