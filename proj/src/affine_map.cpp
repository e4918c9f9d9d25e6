#include "gifs/affine_map.hpp"

#include <cmath>
#include <string>

#include "gifs/errors.hpp"

namespace gifs {

void validate_map(const AffineMap& f, int M, int p) {
    if (M < 1 || p < 1) {
        throw DimensionMismatch("map dimensions must be positive, got M=" +
                                std::to_string(M) + " p=" + std::to_string(p));
    }
    if (f.order() != p) {
        throw DimensionMismatch("map has " + std::to_string(f.order()) +
                                " blocks, expected " + std::to_string(p));
    }
    if (f.dimension() != M) {
        throw DimensionMismatch("map offset has length " +
                                std::to_string(f.dimension()) + ", expected " +
                                std::to_string(M));
    }
    for (double v : f.offset) {
        if (!std::isfinite(v)) {
            throw DimensionMismatch("map offset has a non-finite entry");
        }
    }
    for (const Mat& block : f.blocks) {
        if (static_cast<int>(block.size()) != M) {
            throw DimensionMismatch("map block has " +
                                    std::to_string(block.size()) +
                                    " rows, expected " + std::to_string(M));
        }
        for (const Vec& row : block) {
            if (static_cast<int>(row.size()) != M) {
                throw DimensionMismatch("map block row has " +
                                        std::to_string(row.size()) +
                                        " columns, expected " +
                                        std::to_string(M));
            }
            for (double v : row) {
                if (!std::isfinite(v)) {
                    throw DimensionMismatch(
                        "map block has a non-finite entry");
                }
            }
        }
    }
}

Vec apply_map(const AffineMap& f, std::span<const Vec> args) {
    const int p = f.order();
    const int M = f.dimension();
    if (static_cast<int>(args.size()) != p) {
        throw DimensionMismatch("apply_map got " + std::to_string(args.size()) +
                                " arguments, map has order " +
                                std::to_string(p));
    }
    for (const Vec& u : args) {
        if (static_cast<int>(u.size()) != M) {
            throw DimensionMismatch("apply_map argument has dimension " +
                                    std::to_string(u.size()) + ", expected " +
                                    std::to_string(M));
        }
    }
    // Fixed accumulation order (offset, blocks ascending, columns ascending):
    // the step engine replicates it so both paths agree bitwise.
    Vec out(f.offset);
    for (int j = 0; j < p; ++j) {
        const Mat& block = f.blocks[j];
        const Vec& u = args[j];
        for (int r = 0; r < M; ++r) {
            double acc = out[r];
            const Vec& row = block[r];
            for (int c = 0; c < M; ++c) {
                acc += row[c] * u[c];
            }
            out[r] = acc;
        }
    }
    return out;
}

namespace {

// Largest eigenvalue of the symmetric positive semidefinite matrix A^T A by
// power iteration with a deterministic start vector.
double largest_gram_eigenvalue(const Mat& a) {
    const int M = static_cast<int>(a.size());
    // b = A^T A
    std::vector<double> b(static_cast<std::size_t>(M) * M, 0.0);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            double s = 0.0;
            for (int k = 0; k < M; ++k) {
                s += a[k][i] * a[k][j];
            }
            b[static_cast<std::size_t>(i) * M + j] = s;
        }
    }
    // Deterministic, non-symmetric start so it is not orthogonal to the
    // dominant eigenspace for the matrices that arise in practice.
    std::vector<double> v(M);
    double norm = 0.0;
    for (int i = 0; i < M; ++i) {
        v[i] = 1.0 + 1e-3 * static_cast<double>(i);
        norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;

    std::vector<double> w(M);
    double lambda = 0.0;
    constexpr int kMaxIterations = 10000;
    constexpr double kTolerance = 1e-12;
    for (int it = 0; it < kMaxIterations; ++it) {
        for (int i = 0; i < M; ++i) {
            double s = 0.0;
            for (int j = 0; j < M; ++j) {
                s += b[static_cast<std::size_t>(i) * M + j] * v[j];
            }
            w[i] = s;
        }
        double wnorm = 0.0;
        double rayleigh = 0.0;
        for (int i = 0; i < M; ++i) {
            wnorm += w[i] * w[i];
            rayleigh += v[i] * w[i];  // v^T B v since v is unit
        }
        wnorm = std::sqrt(wnorm);
        if (wnorm == 0.0) return 0.0;
        for (int i = 0; i < M; ++i) v[i] = w[i] / wnorm;
        if (std::abs(rayleigh - lambda) <=
            kTolerance * std::max(1.0, std::abs(rayleigh))) {
            return rayleigh;
        }
        lambda = rayleigh;
    }
    return lambda;
}

}  // namespace

double sigma_max(const Mat& a) {
    const int M = static_cast<int>(a.size());
    if (M == 0) return 0.0;
    if (M == 1) return std::abs(a[0][0]);
    if (M == 2) {
        // Singular values of [[a,b],[c,d]]: sigma^2 are the roots of
        // s^2 - q s + det^2 with q = squared Frobenius norm.
        const double w = a[0][0], x = a[0][1], y = a[1][0], z = a[1][1];
        const double q = w * w + x * x + y * y + z * z;
        const double det = w * z - x * y;
        const double disc = std::max(0.0, q * q - 4.0 * det * det);
        return std::sqrt((q + std::sqrt(disc)) / 2.0);
    }
    const double lambda = std::max(0.0, largest_gram_eigenvalue(a));
    return std::sqrt(lambda);
}

double lip_bound(const AffineMap& f) {
    double sum = 0.0;
    for (const Mat& block : f.blocks) {
        sum += sigma_max(block);
    }
    return sum;
}

}  // namespace gifs
