#pragma once

#include <span>
#include <vector>

#include "gifs/point_set.hpp"
#include "gifs/schedule.hpp"
#include "gifs/system.hpp"

namespace gifs {

// How computed image points are quantized to the lattice (D/n) * Z^M:
//   Floor: component-wise floor of (n/D) * v          -- the basic rule;
//   Round: component-wise floor of (n/D) * v + 1/2    -- the improved rule,
//          halving the per-step snapping error.
enum class SnapMode { Floor, Round };

inline constexpr long long kDefaultTupleBudget = 2'000'000'000LL;

// Guard against combinatorial blow-up: every map evaluation is charged here,
// and a step refuses to start if it would push `used` past `limit`.
// Also accumulates clamp warnings (image coordinates outside the drift
// window [-1e-9, D + 1e-9] that had to be clamped back into the cube).
struct TupleBudget {
    long long limit = kDefaultTupleBudget;
    long long used = 0;
    long long clamp_warnings = 0;

    TupleBudget() = default;
    explicit TupleBudget(long long limit) : limit(limit) {}
    long long remaining() const { return limit - used; }
};

struct StepStats {
    int step = 0;          // 1-based
    long long points = 0;  // set size after the step (after dedup)
    long long tuples = 0;  // map evaluations performed in the step
    double millis = 0.0;   // wall time (informational; not deterministic)
    double eps_k = 0.0;    // grid runs: D*sqrt(M)/n_k (NaN otherwise)
    double bound_k = 0.0;  // grid runs: accumulated error bound (NaN otherwise)
};

struct RunStats {
    std::vector<StepStats> steps;
    long long total_tuples = 0;     // all evaluations charged to the budget
    long long total_points = 0;     // image points computed across steps
    long long clamp_warnings = 0;
    bool partial = false;           // budget ran out before all steps finished
    int completed_steps = 0;
};

// Per-step record of the snapping-gap check made by grid_run with
// verification enabled: the measured Hausdorff gap between the snapped step
// and the exact (unsnapped) operator image must stay within the theoretical
// per-step accuracy.
struct GapCertificate {
    int k = 0;           // 1-based step
    long long n = 0;     // resolution used
    double eps = 0.0;    // D*sqrt(M)/n
    double bound = 0.0;  // eps (Floor) or eps/2 (Round)
    double measured = 0.0;
    bool ok = false;     // measured <= bound + 1e-9
};

// --------------------------------------------------------------------------
// One application of the fractal operator:
//   F(K_1, ..., K_p) = union over maps f of f(K_1 x ... x K_p),
// evaluated exactly over all L * |K_1| * ... * |K_p| argument tuples,
// clamped to the cube per the system's range policy, deduplicated bitwise.
// Throws EmptyInput or TupleBudgetExceeded (before any evaluation).
PointSet fractal_step(const GifsSystem& system, std::span<const PointSet> args,
                      TupleBudget& budget);

// The diagonal operator G(K) = F(K, ..., K).
PointSet g_step(const GifsSystem& system, const PointSet& K,
                TupleBudget& budget);

// Quantizes one point to the lattice (D/n) * Z^M; the result stays in [0, D]
// (v = D maps to index n exactly).
Vec snap(const Vec& v, long long n, double D, SnapMode mode);
std::vector<long long> snap_index(std::span<const double> v, long long n,
                                  double D, SnapMode mode);

// One grid step: the image set of the diagonal operator with every computed
// point snapped to the lattice, deduplicated on integer indices.
PointSet grid_step(const GifsSystem& system, const PointSet& K, long long n,
                   SnapMode mode, TupleBudget& budget);

// --------------------------------------------------------------------------
struct DetRunResult {
    PointSet set;
    RunStats stats;
};

// The deterministic algorithm: starting from K0, applies the diagonal
// operator m_iterates - 1 times (so m_iterates = 1 returns K0 unchanged;
// the printed iterate count of the classical loop). If the budget runs out
// mid-run, returns the last completed iterate flagged partial.
DetRunResult deterministic_run(const GifsSystem& system, const PointSet& K0,
                               int m_iterates, TupleBudget& budget);

struct GridRunResult {
    PointSet set;
    RunStats stats;
    std::vector<GapCertificate> certificates;  // one per step when verifying
};

// The grid algorithm: step k snaps every image point to resolution n_k from
// the schedule. With `verify` set, each step additionally materializes the
// exact operator image (same evaluations, second unsnapped copy) and records
// the measured snapping gap; a gap above bound + 1e-9 * D throws
// VerificationFailure. Budget exhaustion returns the completed prefix,
// flagged partial.
GridRunResult grid_run(const GifsSystem& system, const PointSet& K0,
                       const GridSchedule& schedule, SnapMode mode,
                       TupleBudget& budget, bool verify = false);

struct MemoryRunResult {
    PointSet set;
    RunStats stats;
};

// The order-p memory iteration: from seeds K_1..K_p, repeatedly appends
// K_{n+p} = F(K_n, ..., K_{n+p-1}) and slides the window, `steps` times,
// returning the final window entry. Budget exhaustion returns the last
// completed iterate flagged partial.
MemoryRunResult memory_p_run(const GifsSystem& system,
                             std::span<const PointSet> seeds, int steps,
                             TupleBudget& budget);

namespace detail {
// Enforces the gap inequality for one certificate; throws VerificationFailure
// when measured > bound + 1e-9 * D. Exposed for direct testing.
void enforce_gap(const GapCertificate& cert, double D);
}  // namespace detail

}  // namespace gifs
