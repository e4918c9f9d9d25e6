// Python bindings for the gifs library.  The module mirrors the C++ API:
// value types map to small classes, std::span parameters take lists, and
// SnapMode is spelled as the strings "floor" / "round".
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <string>
#include <vector>

#include "gifs/affine_map.hpp"
#include "gifs/algorithms.hpp"
#include "gifs/complexity.hpp"
#include "gifs/errors.hpp"
#include "gifs/metrics.hpp"
#include "gifs/point_set.hpp"
#include "gifs/render.hpp"
#include "gifs/schedule.hpp"
#include "gifs/sysio.hpp"
#include "gifs/system.hpp"

namespace py = pybind11;
using namespace gifs;

namespace {

SnapMode parse_mode(const std::string& mode) {
    if (mode == "floor") return SnapMode::Floor;
    if (mode == "round") return SnapMode::Round;
    throw Error("unknown snap mode '" + mode + "'; use 'floor' or 'round'");
}

}  // namespace

PYBIND11_MODULE(_gifs, m) {
    m.doc() = "attractor images of generalized iterated function systems";
    m.attr("__version__") = "1.0.0";
    m.attr("DEFAULT_TUPLE_BUDGET") = kDefaultTupleBudget;

    // ------------------------------------------------------------- exceptions
    static py::exception<Error> base(m, "GifsError");
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch",
                                              base.ptr());
    py::register_exception<ContractionViolation>(m, "ContractionViolation",
                                                 base.ptr());
    py::register_exception<RangeViolation>(m, "RangeViolation", base.ptr());
    py::register_exception<EmptyInput>(m, "EmptyInput", base.ptr());
    py::register_exception<TupleBudgetExceeded>(m, "TupleBudgetExceeded",
                                                base.ptr());
    py::register_exception<VerificationFailure>(m, "VerificationFailure",
                                                base.ptr());
    py::register_exception<EpsilonTooLarge>(m, "EpsilonTooLarge", base.ptr());
    py::register_exception<UnsupportedOrder>(m, "UnsupportedOrder",
                                             base.ptr());
    py::register_exception<UnknownExample>(m, "UnknownExample", base.ptr());
    py::register_exception<SyntaxError>(m, "GifsSyntaxError", base.ptr());
    py::register_exception<SemanticError>(m, "SemanticError", base.ptr());
    py::register_exception<IoError>(m, "GifsIoError", base.ptr());

    // ------------------------------------------------------------------ enums
    py::enum_<RangePolicy>(m, "RangePolicy")
        .value("Strict", RangePolicy::Strict)
        .value("Clamp", RangePolicy::Clamp);
    py::enum_<ScheduleKind>(m, "ScheduleKind")
        .value("Quadratic", ScheduleKind::Quadratic)
        .value("Optimal", ScheduleKind::Optimal)
        .value("Constant", ScheduleKind::Constant)
        .value("Custom", ScheduleKind::Custom);

    // ------------------------------------------------------------------- core
    py::class_<AffineMap>(m, "AffineMap")
        .def(py::init<>())
        .def(py::init([](std::vector<Mat> blocks, Vec offset) {
                 AffineMap f;
                 f.blocks = std::move(blocks);
                 f.offset = std::move(offset);
                 return f;
             }),
             py::arg("blocks"), py::arg("offset"))
        .def_readwrite("blocks", &AffineMap::blocks)
        .def_readwrite("offset", &AffineMap::offset)
        .def("dimension", &AffineMap::dimension)
        .def("order", &AffineMap::order)
        .def("__eq__",
             [](const AffineMap& a, const AffineMap& b) { return a == b; });

    m.def("validate_map", &validate_map, py::arg("f"), py::arg("M"),
          py::arg("p"));
    m.def(
        "apply_map",
        [](const AffineMap& f, const std::vector<Vec>& args) {
            return apply_map(f, std::span<const Vec>(args));
        },
        py::arg("f"), py::arg("args"));
    m.def("sigma_max", &sigma_max, py::arg("a"));
    m.def("lip_bound", &lip_bound, py::arg("f"));

    py::class_<GifsSystem>(m, "GifsSystem")
        .def_readonly("M", &GifsSystem::M)
        .def_readonly("p", &GifsSystem::p)
        .def_readonly("D", &GifsSystem::D)
        .def_readonly("maps", &GifsSystem::maps)
        .def_readonly("lip_bounds", &GifsSystem::lip_bounds)
        .def_readonly("C", &GifsSystem::C)
        .def_readonly("range_policy", &GifsSystem::range_policy)
        .def("L", &GifsSystem::L)
        .def("beta", &GifsSystem::beta)
        .def("diameter", &GifsSystem::diameter);

    m.def("build_system", &build_system, py::arg("maps"), py::arg("D"),
          py::arg("p"), py::arg("M"),
          py::arg("policy") = RangePolicy::Strict);

    py::class_<PointSet>(m, "PointSet")
        .def(py::init<>())
        .def_static("raw", &PointSet::raw, py::arg("M"),
                    py::arg("flat_coords"))
        .def_static("lattice", &PointSet::lattice, py::arg("M"), py::arg("n"),
                    py::arg("D"), py::arg("flat_indices"))
        .def_static("single", &PointSet::single, py::arg("point"))
        .def_static("cube_center", &PointSet::cube_center, py::arg("M"),
                    py::arg("D"))
        .def("dimension", &PointSet::dimension)
        .def("size", &PointSet::size)
        .def("__len__", &PointSet::size)
        .def("empty", &PointSet::empty)
        .def("is_lattice", &PointSet::is_lattice)
        .def("coords",
             [](const PointSet& s) {
                 return std::vector<double>(s.coords().begin(),
                                            s.coords().end());
             })
        .def("indices",
             [](const PointSet& s) {
                 return std::vector<long long>(s.indices().begin(),
                                               s.indices().end());
             })
        .def("grid_n", &PointSet::grid_n)
        .def("grid_D", &PointSet::grid_D)
        .def("point", [](const PointSet& s, std::size_t i) {
            if (i >= s.size()) throw py::index_error();
            const auto span = s.point(i);
            return Vec(span.begin(), span.end());
        });

    m.def("lattice_coord", &lattice_coord, py::arg("g"), py::arg("n"),
          py::arg("D"));

    // ------------------------------------------------------------- algorithms
    py::class_<TupleBudget>(m, "TupleBudget")
        .def(py::init([](long long limit) { return TupleBudget{limit}; }),
             py::arg("limit") = kDefaultTupleBudget)
        .def_readwrite("limit", &TupleBudget::limit)
        .def_readwrite("used", &TupleBudget::used)
        .def_readwrite("clamp_warnings", &TupleBudget::clamp_warnings)
        .def("remaining", &TupleBudget::remaining);

    py::class_<StepStats>(m, "StepStats")
        .def_readonly("step", &StepStats::step)
        .def_readonly("points", &StepStats::points)
        .def_readonly("tuples", &StepStats::tuples)
        .def_readonly("millis", &StepStats::millis)
        .def_readonly("eps_k", &StepStats::eps_k)
        .def_readonly("bound_k", &StepStats::bound_k);

    py::class_<RunStats>(m, "RunStats")
        .def_readonly("steps", &RunStats::steps)
        .def_readonly("total_tuples", &RunStats::total_tuples)
        .def_readonly("total_points", &RunStats::total_points)
        .def_readonly("clamp_warnings", &RunStats::clamp_warnings)
        .def_readonly("partial", &RunStats::partial)
        .def_readonly("completed_steps", &RunStats::completed_steps);

    py::class_<GapCertificate>(m, "GapCertificate")
        .def_readonly("k", &GapCertificate::k)
        .def_readonly("n", &GapCertificate::n)
        .def_readonly("eps", &GapCertificate::eps)
        .def_readonly("bound", &GapCertificate::bound)
        .def_readonly("measured", &GapCertificate::measured)
        .def_readonly("ok", &GapCertificate::ok);

    py::class_<DetRunResult>(m, "DetRunResult")
        .def_readonly("set", &DetRunResult::set)
        .def_readonly("stats", &DetRunResult::stats);
    py::class_<GridRunResult>(m, "GridRunResult")
        .def_readonly("set", &GridRunResult::set)
        .def_readonly("stats", &GridRunResult::stats)
        .def_readonly("certificates", &GridRunResult::certificates);
    py::class_<MemoryRunResult>(m, "MemoryRunResult")
        .def_readonly("set", &MemoryRunResult::set)
        .def_readonly("stats", &MemoryRunResult::stats);

    m.def(
        "fractal_step",
        [](const GifsSystem& sys, const std::vector<PointSet>& args,
           TupleBudget& budget) {
            return fractal_step(sys, std::span<const PointSet>(args), budget);
        },
        py::arg("system"), py::arg("args"), py::arg("budget"));
    m.def("g_step", &g_step, py::arg("system"), py::arg("K"),
          py::arg("budget"));
    m.def(
        "snap",
        [](const Vec& v, long long n, double D, const std::string& mode) {
            return snap(v, n, D, parse_mode(mode));
        },
        py::arg("v"), py::arg("n"), py::arg("D"), py::arg("mode") = "floor");
    m.def(
        "snap_index",
        [](const Vec& v, long long n, double D, const std::string& mode) {
            return snap_index(std::span<const double>(v), n, D,
                              parse_mode(mode));
        },
        py::arg("v"), py::arg("n"), py::arg("D"), py::arg("mode") = "floor");
    m.def(
        "grid_step",
        [](const GifsSystem& sys, const PointSet& K, long long n,
           const std::string& mode, TupleBudget& budget) {
            return grid_step(sys, K, n, parse_mode(mode), budget);
        },
        py::arg("system"), py::arg("K"), py::arg("n"),
        py::arg("mode"), py::arg("budget"));
    m.def("deterministic_run", &deterministic_run, py::arg("system"),
          py::arg("K0"), py::arg("m_iterates"), py::arg("budget"));
    m.def(
        "grid_run",
        [](const GifsSystem& sys, const PointSet& K0,
           const GridSchedule& schedule, const std::string& mode,
           TupleBudget& budget, bool verify) {
            return grid_run(sys, K0, schedule, parse_mode(mode), budget,
                            verify);
        },
        py::arg("system"), py::arg("K0"), py::arg("schedule"),
        py::arg("mode"), py::arg("budget"), py::arg("verify") = false);
    m.def(
        "memory_p_run",
        [](const GifsSystem& sys, const std::vector<PointSet>& seeds,
           int steps, TupleBudget& budget) {
            return memory_p_run(sys, std::span<const PointSet>(seeds), steps,
                                budget);
        },
        py::arg("system"), py::arg("seeds"), py::arg("steps"),
        py::arg("budget"));

    // --------------------------------------------------------------- schedule
    py::class_<GridSchedule>(m, "GridSchedule")
        .def_readonly("n", &GridSchedule::n)
        .def_readonly("D", &GridSchedule::D)
        .def_readonly("M", &GridSchedule::M)
        .def_readonly("kind", &GridSchedule::kind)
        .def_readonly("target_eps", &GridSchedule::target_eps)
        .def("steps", &GridSchedule::steps)
        .def("eps_at", &GridSchedule::eps_at, py::arg("i"))
        .def("eps", &GridSchedule::eps);

    py::class_<OptimalPlan>(m, "OptimalPlan")
        .def_readonly("target_eps", &OptimalPlan::target_eps)
        .def_readonly("N", &OptimalPlan::N)
        .def_readonly("eps0", &OptimalPlan::eps0)
        .def_readonly("k_N", &OptimalPlan::k_N)
        .def_readonly("t", &OptimalPlan::t)
        .def_readonly("K1", &OptimalPlan::K1)
        .def_readonly("K2", &OptimalPlan::K2)
        .def_readonly("K3", &OptimalPlan::K3)
        .def_readonly("a", &OptimalPlan::a)
        .def_readonly("y", &OptimalPlan::y)
        .def_readonly("C", &OptimalPlan::C)
        .def_readonly("D", &OptimalPlan::D)
        .def_readonly("M", &OptimalPlan::M)
        .def_readonly("p", &OptimalPlan::p);

    m.def("quadratic_schedule", &quadratic_schedule, py::arg("steps"),
          py::arg("D"), py::arg("M"));
    m.def("constant_schedule", &constant_schedule, py::arg("n"),
          py::arg("steps"), py::arg("D"), py::arg("M"));
    m.def("custom_schedule", &custom_schedule, py::arg("n"), py::arg("D"),
          py::arg("M"));
    m.def("optimal_plan", &optimal_plan, py::arg("target_eps"), py::arg("C"),
          py::arg("D"), py::arg("M"), py::arg("p"));
    m.def("schedule_from_plan", &schedule_from_plan, py::arg("plan"));
    m.def("error_bound", &error_bound, py::arg("schedule"), py::arg("C"));
    m.def("plan_cost_direct_ln", &plan_cost_direct_ln, py::arg("plan"));
    m.def("plan_cost_ln_at", &plan_cost_ln_at, py::arg("plan"), py::arg("y"));
    m.def("profile_cost_ln", &profile_cost_ln, py::arg("eps"),
          py::arg("beta"));
    m.def("schedule_to_text", &schedule_to_text, py::arg("schedule"));
    m.def("schedule_from_text", &schedule_from_text, py::arg("text"),
          py::arg("D"), py::arg("M"));

    // ---------------------------------------------------------------- metrics
    py::class_<Witness>(m, "Witness")
        .def_readonly("from_index", &Witness::from)
        .def_readonly("to_index", &Witness::to);
    py::class_<DistanceReport>(m, "DistanceReport")
        .def_readonly("h", &DistanceReport::h)
        .def_readonly("directed_12", &DistanceReport::directed_12)
        .def_readonly("directed_21", &DistanceReport::directed_21)
        .def_readonly("witness_12", &DistanceReport::witness_12)
        .def_readonly("witness_21", &DistanceReport::witness_21);

    m.def("directed_distance", &directed_distance, py::arg("A"), py::arg("B"));
    m.def("hausdorff", &hausdorff, py::arg("A"), py::arg("B"));
    m.def(
        "directed_brute",
        [](const PointSet& A, const PointSet& B) {
            return detail::directed_brute(A, B, nullptr);
        },
        py::arg("A"), py::arg("B"));
    m.def(
        "directed_bucketed",
        [](const PointSet& A, const PointSet& B) {
            return detail::directed_bucketed(A, B, nullptr);
        },
        py::arg("A"), py::arg("B"));

    // ------------------------------------------------------------- complexity
    py::class_<CostParams>(m, "CostParams")
        .def(py::init<>())
        .def(py::init([](long long x0, int L, int p, int M, double C) {
                 CostParams cp;
                 cp.x0 = x0;
                 cp.L = L;
                 cp.p = p;
                 cp.M = M;
                 cp.C = C;
                 return cp;
             }),
             py::arg("x0"), py::arg("L"), py::arg("p"), py::arg("M"),
             py::arg("C"))
        .def_readwrite("x0", &CostParams::x0)
        .def_readwrite("L", &CostParams::L)
        .def_readwrite("p", &CostParams::p)
        .def_readwrite("M", &CostParams::M)
        .def_readwrite("C", &CostParams::C)
        .def("beta", &CostParams::beta);

    py::class_<DetCost>(m, "DetCost")
        .def_readonly("ln_base", &DetCost::ln_base)
        .def_readonly("exponent_ln", &DetCost::exponent_ln)
        .def("exponent", &DetCost::exponent)
        .def("ln", &DetCost::ln)
        .def("ln_ln", &DetCost::ln_ln)
        .def("value", &DetCost::value);
    py::class_<GridCost>(m, "GridCost")
        .def_readonly("ln_coeff", &GridCost::ln_coeff)
        .def_readonly("ln", &GridCost::ln)
        .def("coefficient", &GridCost::coefficient)
        .def("value", &GridCost::value);
    py::class_<IfsCost>(m, "IfsCost")
        .def_readonly("inv_eps", &IfsCost::inv_eps)
        .def_readonly("exponent", &IfsCost::exponent)
        .def_readonly("ln", &IfsCost::ln)
        .def("value", &IfsCost::value);
    py::class_<RatioRow>(m, "RatioRow")
        .def_readonly("eps", &RatioRow::eps)
        .def_readonly("ln_grid", &RatioRow::ln_grid)
        .def_readonly("ln_det", &RatioRow::ln_det)
        .def_readonly("ln_ratio", &RatioRow::ln_ratio);

    m.def("cost_deterministic", &cost_deterministic, py::arg("eps"),
          py::arg("params"));
    m.def("cost_grid", &cost_grid, py::arg("eps"), py::arg("params"));
    m.def("cost_ifs", &cost_ifs, py::arg("eps"), py::arg("L"), py::arg("C"));
    m.def("xk_bound_ln", &xk_bound_ln, py::arg("k"), py::arg("params"));
    m.def("xk_recurrence_ln", &xk_recurrence_ln, py::arg("k"),
          py::arg("params"));
    m.def(
        "ratio_table",
        [](const std::vector<double>& eps, const CostParams& params) {
            return ratio_table(std::span<const double>(eps), params);
        },
        py::arg("eps_list"), py::arg("params"));
    m.def(
        "ratio_table_csv",
        [](const std::vector<double>& eps, const CostParams& params) {
            return ratio_table_csv(std::span<const double>(eps), params);
        },
        py::arg("eps_list"), py::arg("params"));

    // ------------------------------------------------------------ file format
    py::class_<SystemDocument>(m, "SystemDocument")
        .def(py::init<>())
        .def_readwrite("M", &SystemDocument::M)
        .def_readwrite("p", &SystemDocument::p)
        .def_readwrite("D", &SystemDocument::D)
        .def_readwrite("policy", &SystemDocument::policy)
        .def_readwrite("name", &SystemDocument::name)
        .def_readwrite("map_names", &SystemDocument::map_names)
        .def_readwrite("maps", &SystemDocument::maps)
        .def("__eq__", [](const SystemDocument& a, const SystemDocument& b) {
            return a == b;
        });

    m.def("parse_document", &parse_document, py::arg("text"));
    m.def("serialize", &serialize, py::arg("doc"));
    m.def("to_system", &to_system, py::arg("doc"));
    m.def("parse_system", &parse_system, py::arg("text"));
    m.def("builtin_document", &builtin_document, py::arg("name"));
    m.def("builtin", &builtin, py::arg("name"));

    // ---------------------------------------------------------------- render
    py::class_<Raster>(m, "Raster")
        .def_readonly("width", &Raster::width)
        .def_readonly("height", &Raster::height)
        .def("get", &Raster::get, py::arg("x"), py::arg("y"))
        .def("occupancy", &Raster::occupancy);

    m.def("rasterize", &rasterize, py::arg("points"), py::arg("width"),
          py::arg("height"), py::arg("D"), py::arg("axis_x") = 0,
          py::arg("axis_y") = 1);
    m.def(
        "ppm_bytes",
        [](const Raster& raster) {
            const std::vector<std::uint8_t> bytes = ppm_bytes(raster);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                             bytes.size());
        },
        py::arg("raster"));
    m.def("write_ppm", &write_ppm, py::arg("raster"), py::arg("path"));
}
