#include "gifs/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gifs/errors.hpp"
#include "gifs/metrics.hpp"

namespace gifs {

namespace {

constexpr double kDriftWindow = 1e-9;
// Pending image values are canonicalized once this many scalars accumulate,
// keeping memory proportional to the deduplicated set, not the tuple count.
constexpr std::size_t kFlushValues = 16'000'000;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch())
        .count();
}

// L * prod |K_i| clipped to LLONG_MAX.
long long tuple_count(std::size_t L, std::span<const PointSet* const> args) {
    __int128 need = static_cast<long long>(L);
    for (const PointSet* k : args) {
        need *= static_cast<long long>(k->size());
        if (need > std::numeric_limits<long long>::max()) {
            return std::numeric_limits<long long>::max();
        }
    }
    return static_cast<long long>(need);
}

inline long long snap_one(double v, double scale, long long n, double D,
                          SnapMode mode) {
    double t = v * scale;
    if (mode == SnapMode::Round) t += 0.5;
    long long idx = static_cast<long long>(std::floor(t));
    if (idx < 0) idx = 0;
    if (idx > n) idx = n;
    if (mode == SnapMode::Floor) {
        // v * scale carries a few ulps of error, which would break floor
        // semantics right at a lattice coordinate (and idempotence with it).
        // Correct against the materialized lattice: the result is the largest
        // index whose coordinate is <= v, exactly.
        while (idx < n && lattice_coord(idx + 1, n, D) <= v) ++idx;
        while (idx > 0 && lattice_coord(idx, n, D) > v) --idx;
    }
    return idx;
}

// Evaluates every map over every argument tuple: clamps to the cube, then
// either snaps to the lattice at resolution n (snap == true) or keeps raw
// coordinates, deduplicating as it goes. With want_raw set it additionally
// collects the clamped unsnapped image (same evaluations, second copy).
// Returns false, charging nothing, if the budget cannot cover the step.
bool run_step(const GifsSystem& S, std::span<const PointSet* const> args,
              TupleBudget& budget, bool snap_points, long long n,
              SnapMode mode, bool want_raw, PointSet* out_main,
              PointSet* out_raw, long long* tuples_out) {
    const int M = S.M;
    const int p = S.p;
    for (const PointSet* k : args) {
        if (k->empty()) {
            throw EmptyInput("operator applied to an empty point set");
        }
        if (k->dimension() != M) {
            throw DimensionMismatch("argument set dimension " +
                                    std::to_string(k->dimension()) +
                                    " does not match the system's " +
                                    std::to_string(M));
        }
    }
    const long long need = tuple_count(S.L(), args);
    if (need > budget.limit - budget.used) {
        return false;
    }
    budget.used += need;
    if (tuples_out) *tuples_out = need;

    const double D = S.D;
    const double scale =
        snap_points ? static_cast<double>(n) / D : 0.0;

    std::vector<long long> lattice_acc, lattice_chunk;
    std::vector<double> raw_acc, raw_chunk;
    std::vector<double> companion_acc, companion_chunk;

    auto flush = [&](auto& acc, auto& chunk, auto sort_unique) {
        if (chunk.empty()) return;
        acc.insert(acc.end(), chunk.begin(), chunk.end());
        chunk.clear();
        sort_unique(M, acc);
    };
    auto flush_all = [&](bool force) {
        if (snap_points) {
            if (force || lattice_chunk.size() >= kFlushValues) {
                flush(lattice_acc, lattice_chunk, sort_unique_lattice);
            }
        } else {
            if (force || raw_chunk.size() >= kFlushValues) {
                flush(raw_acc, raw_chunk, sort_unique_raw);
            }
        }
        if (want_raw && (force || companion_chunk.size() >= kFlushValues)) {
            flush(companion_acc, companion_chunk, sort_unique_raw);
        }
    };

    std::vector<const double*> base(args.size());
    std::vector<std::size_t> sizes(args.size());
    for (std::size_t j = 0; j < args.size(); ++j) {
        base[j] = args[j]->coords().data();
        sizes[j] = args[j]->size();
    }
    std::vector<std::size_t> odo(args.size(), 0);
    std::vector<const double*> cur(args.size());
    for (std::size_t j = 0; j < args.size(); ++j) cur[j] = base[j];
    std::vector<double> buf(static_cast<std::size_t>(M));

    bool more = true;
    while (more) {
        for (const AffineMap& f : S.maps) {
            // Same accumulation order as apply_map, so both paths agree
            // bitwise: offset, then blocks ascending, columns ascending.
            for (int r = 0; r < M; ++r) {
                double acc = f.offset[r];
                for (int j = 0; j < p; ++j) {
                    const Vec& row = f.blocks[j][r];
                    const double* u = cur[j];
                    for (int c = 0; c < M; ++c) {
                        acc += row[c] * u[c];
                    }
                }
                buf[r] = acc;
            }
            bool warned = false;
            for (int r = 0; r < M; ++r) {
                double v = buf[r];
                if (v < 0.0) {
                    if (v < -kDriftWindow) warned = true;
                    v = 0.0;
                } else if (v > D) {
                    if (v > D + kDriftWindow) warned = true;
                    v = D;
                }
                buf[r] = v;
            }
            if (warned) ++budget.clamp_warnings;
            if (snap_points) {
                for (int r = 0; r < M; ++r) {
                    lattice_chunk.push_back(
                        snap_one(buf[r], scale, n, D, mode));
                }
            } else {
                raw_chunk.insert(raw_chunk.end(), buf.begin(), buf.end());
            }
            if (want_raw) {
                companion_chunk.insert(companion_chunk.end(), buf.begin(),
                                       buf.end());
            }
        }
        flush_all(false);
        // Advance the argument odometer.
        more = false;
        for (std::size_t j = args.size(); j-- > 0;) {
            if (++odo[j] < sizes[j]) {
                cur[j] = base[j] + odo[j] * static_cast<std::size_t>(M);
                more = true;
                break;
            }
            odo[j] = 0;
            cur[j] = base[j];
        }
    }
    flush_all(true);

    if (snap_points) {
        *out_main = from_sorted_unique_lattice(M, n, D, std::move(lattice_acc));
    } else {
        *out_main = from_sorted_unique_raw(M, std::move(raw_acc));
    }
    if (want_raw && out_raw) {
        *out_raw = from_sorted_unique_raw(M, std::move(companion_acc));
    }
    return true;
}

std::vector<const PointSet*> as_pointers(std::span<const PointSet> sets) {
    std::vector<const PointSet*> ptrs;
    ptrs.reserve(sets.size());
    for (const PointSet& s : sets) ptrs.push_back(&s);
    return ptrs;
}

void require_arity(const GifsSystem& S, std::size_t n_args) {
    if (n_args != static_cast<std::size_t>(S.p)) {
        throw DimensionMismatch("the operator takes " + std::to_string(S.p) +
                                " argument sets, got " +
                                std::to_string(n_args));
    }
}

void require_seed(const GifsSystem& S, const PointSet& K) {
    if (K.empty()) throw EmptyInput("seed set is empty");
    if (K.dimension() != S.M) {
        throw DimensionMismatch("seed dimension does not match the system");
    }
    if (!K.within_cube(S.D, kDriftWindow)) {
        throw RangeViolation("seed points must lie in [0, D]^M");
    }
}

[[noreturn]] void throw_budget(const GifsSystem& S,
                               std::span<const PointSet* const> args,
                               const TupleBudget& budget) {
    const long long need = tuple_count(S.L(), args);
    throw TupleBudgetExceeded(
        "step needs " + std::to_string(need) +
            " map evaluations but only " + std::to_string(budget.remaining()) +
            " of " + std::to_string(budget.limit) + " remain",
        need, budget.limit);
}

}  // namespace

namespace detail {

void enforce_gap(const GapCertificate& cert, double D) {
    if (cert.measured > cert.bound + 1e-9 * D) {
        throw VerificationFailure(
            "step " + std::to_string(cert.k) + ": measured snapping gap " +
            std::to_string(cert.measured) + " exceeds its bound " +
            std::to_string(cert.bound) +
            "; this indicates an implementation bug");
    }
}

}  // namespace detail

PointSet fractal_step(const GifsSystem& system, std::span<const PointSet> args,
                      TupleBudget& budget) {
    require_arity(system, args.size());
    const auto ptrs = as_pointers(args);
    PointSet out;
    if (!run_step(system, ptrs, budget, false, 0, SnapMode::Floor, false, &out,
                  nullptr, nullptr)) {
        throw_budget(system, ptrs, budget);
    }
    return out;
}

PointSet g_step(const GifsSystem& system, const PointSet& K,
                TupleBudget& budget) {
    const std::vector<const PointSet*> ptrs(static_cast<std::size_t>(system.p),
                                            &K);
    PointSet out;
    if (!run_step(system, ptrs, budget, false, 0, SnapMode::Floor, false, &out,
                  nullptr, nullptr)) {
        throw_budget(system, ptrs, budget);
    }
    return out;
}

std::vector<long long> snap_index(std::span<const double> v, long long n,
                                  double D, SnapMode mode) {
    if (n < 1) throw DimensionMismatch("snap needs a resolution n >= 1");
    std::vector<long long> idx;
    idx.reserve(v.size());
    const double scale = static_cast<double>(n) / D;
    for (double x : v) {
        // The cube boundary maps to index n exactly, immune to rounding in
        // x * scale.
        idx.push_back(x == D ? n : snap_one(x, scale, n, D, mode));
    }
    return idx;
}

Vec snap(const Vec& v, long long n, double D, SnapMode mode) {
    const auto idx = snap_index(v, n, D, mode);
    Vec out;
    out.reserve(idx.size());
    for (long long g : idx) out.push_back(lattice_coord(g, n, D));
    return out;
}

PointSet grid_step(const GifsSystem& system, const PointSet& K, long long n,
                   SnapMode mode, TupleBudget& budget) {
    if (n < 1) throw DimensionMismatch("grid_step needs a resolution n >= 1");
    const std::vector<const PointSet*> ptrs(static_cast<std::size_t>(system.p),
                                            &K);
    PointSet out;
    if (!run_step(system, ptrs, budget, true, n, mode, false, &out, nullptr,
                  nullptr)) {
        throw_budget(system, ptrs, budget);
    }
    return out;
}

DetRunResult deterministic_run(const GifsSystem& system, const PointSet& K0,
                               int m_iterates, TupleBudget& budget) {
    if (m_iterates < 1) {
        throw DimensionMismatch("deterministic_run needs m >= 1 iterates");
    }
    require_seed(system, K0);
    const long long warnings_before = budget.clamp_warnings;

    DetRunResult result;
    result.set = K0;
    for (int k = 1; k <= m_iterates - 1; ++k) {
        const std::vector<const PointSet*> ptrs(
            static_cast<std::size_t>(system.p), &result.set);
        PointSet next;
        long long tuples = 0;
        const double t0 = now_ms();
        if (!run_step(system, ptrs, budget, false, 0, SnapMode::Floor, false,
                      &next, nullptr, &tuples)) {
            result.stats.partial = true;
            break;
        }
        const double t1 = now_ms();
        result.set = std::move(next);
        result.stats.steps.push_back(
            StepStats{k, static_cast<long long>(result.set.size()), tuples,
                      t1 - t0, quiet_nan(), quiet_nan()});
        result.stats.total_tuples += tuples;
        result.stats.total_points += tuples;
        result.stats.completed_steps = k;
    }
    result.stats.clamp_warnings = budget.clamp_warnings - warnings_before;
    return result;
}

GridRunResult grid_run(const GifsSystem& system, const PointSet& K0,
                       const GridSchedule& schedule, SnapMode mode,
                       TupleBudget& budget, bool verify) {
    if (schedule.M != system.M || schedule.D != system.D) {
        throw DimensionMismatch(
            "schedule geometry (D, M) does not match the system");
    }
    require_seed(system, K0);
    const long long warnings_before = budget.clamp_warnings;

    GridRunResult result;
    result.set = K0;
    double bound_acc = system.diameter();
    for (std::size_t i = 0; i < schedule.n.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        const long long n = schedule.n[i];
        const double eps_k = schedule.eps_at(i);
        const std::vector<const PointSet*> ptrs(
            static_cast<std::size_t>(system.p), &result.set);
        PointSet next, raw;
        long long tuples = 0;
        const double t0 = now_ms();
        if (!run_step(system, ptrs, budget, true, n, mode, verify, &next, &raw,
                      &tuples)) {
            result.stats.partial = true;
            break;
        }
        const double t1 = now_ms();
        result.set = std::move(next);
        bound_acc = bound_acc * system.C + eps_k;
        result.stats.steps.push_back(
            StepStats{k, static_cast<long long>(result.set.size()), tuples,
                      t1 - t0, eps_k, bound_acc});
        result.stats.total_tuples += tuples;
        result.stats.total_points += tuples;
        result.stats.completed_steps = k;
        if (verify) {
            GapCertificate cert;
            cert.k = k;
            cert.n = n;
            cert.eps = eps_k;
            cert.bound = mode == SnapMode::Floor ? eps_k : eps_k / 2.0;
            cert.measured = hausdorff(result.set, raw).h;
            cert.ok = cert.measured <= cert.bound + 1e-9;
            detail::enforce_gap(cert, system.D);
            result.certificates.push_back(cert);
        }
    }
    result.stats.clamp_warnings = budget.clamp_warnings - warnings_before;
    return result;
}

MemoryRunResult memory_p_run(const GifsSystem& system,
                             std::span<const PointSet> seeds, int steps,
                             TupleBudget& budget) {
    require_arity(system, seeds.size());
    if (steps < 1) throw DimensionMismatch("memory_p_run needs steps >= 1");
    for (const PointSet& s : seeds) require_seed(system, s);
    const long long warnings_before = budget.clamp_warnings;

    MemoryRunResult result;
    std::vector<PointSet> window(seeds.begin(), seeds.end());
    for (int s = 1; s <= steps; ++s) {
        const auto ptrs = as_pointers(window);
        PointSet next;
        long long tuples = 0;
        const double t0 = now_ms();
        if (!run_step(system, ptrs, budget, false, 0, SnapMode::Floor, false,
                      &next, nullptr, &tuples)) {
            result.stats.partial = true;
            break;
        }
        const double t1 = now_ms();
        result.stats.steps.push_back(
            StepStats{s, static_cast<long long>(next.size()), tuples, t1 - t0,
                      quiet_nan(), quiet_nan()});
        result.stats.total_tuples += tuples;
        result.stats.total_points += tuples;
        result.stats.completed_steps = s;
        window.erase(window.begin());
        window.push_back(std::move(next));
    }
    result.set = window.back();
    result.stats.clamp_warnings = budget.clamp_warnings - warnings_before;
    return result;
}

}  // namespace gifs
