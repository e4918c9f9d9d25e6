// gifsgen: attractor images and benchmarks for generalized iterated
// function systems on [0,D]^M.
//
// Exit codes: 0 success, 1 configuration error, 2 certification failure
// (contraction / range / verification), 3 tuple budget exhausted (partial
// outputs are still written and flagged).

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gifs/algorithms.hpp"
#include "gifs/complexity.hpp"
#include "gifs/errors.hpp"
#include "gifs/metrics.hpp"
#include "gifs/render.hpp"
#include "gifs/schedule.hpp"
#include "gifs/sysio.hpp"

namespace {

using namespace gifs;

std::string fmt17(double v) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw IoError("cannot write '" + path + "'");
}

double parse_double(std::string_view token, const std::string& what) {
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double v = 0.0;
    const char* b = token.data();
    const char* e = b + token.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
        throw Error("invalid " + what + ": '" + std::string(token) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) end = s.size();
        parts.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

struct SystemSource {
    std::string builtin_name;
    std::string file_path;
};

struct LoadedSystem {
    GifsSystem system;
    std::string label;
};

LoadedSystem load_system(const SystemSource& src) {
    if (src.builtin_name.empty() == src.file_path.empty()) {
        throw Error("give exactly one of --builtin or --system");
    }
    SystemDocument doc = src.builtin_name.empty()
                             ? parse_document(read_file(src.file_path))
                             : builtin_document(src.builtin_name);
    std::string label = !doc.name.empty()
                            ? doc.name
                            : (!src.file_path.empty() ? src.file_path
                                                      : src.builtin_name);
    return LoadedSystem{to_system(doc), std::move(label)};
}

PointSet parse_seed(const std::string& spec, int M) {
    std::vector<double> flat;
    for (std::string_view point : split(spec, ';')) {
        const auto coords = split(point, ',');
        if (coords.size() != static_cast<std::size_t>(M)) {
            throw Error("--seed point '" + std::string(point) + "' has " +
                        std::to_string(coords.size()) +
                        " coordinates, expected " + std::to_string(M));
        }
        for (std::string_view c : coords) {
            flat.push_back(parse_double(c, "--seed coordinate"));
        }
    }
    return PointSet::raw(M, std::move(flat));
}

long long resolve_budget(bool flag_given, long long flag_value) {
    long long limit = kDefaultTupleBudget;
    if (const char* env = std::getenv("GIFS_BUDGET")) {
        std::string_view sv(env);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc() || ptr != sv.data() + sv.size() || v < 1) {
            throw Error("invalid GIFS_BUDGET value '" + std::string(sv) + "'");
        }
        limit = v;
    }
    if (flag_given) limit = flag_value;
    if (limit < 1) throw Error("--budget must be at least 1");
    return limit;
}

GridSchedule make_schedule(const std::string& spec, bool steps_given,
                           int steps, const GifsSystem& sys) {
    if (spec == "quad") {
        if (!steps_given) {
            throw Error("--schedule quad needs --steps");
        }
        return quadratic_schedule(steps, sys.D, sys.M);
    }
    if (spec.rfind("optimal:", 0) == 0) {
        if (steps_given) {
            throw Error(
                "--schedule optimal:<eps> chooses its own step count; drop "
                "--steps");
        }
        const double eps =
            parse_double(std::string_view(spec).substr(8), "target accuracy");
        return schedule_from_plan(
            optimal_plan(eps, sys.C, sys.D, sys.M, sys.p));
    }
    if (spec.rfind("const:", 0) == 0) {
        if (!steps_given) {
            throw Error("--schedule const:<n> needs --steps");
        }
        std::string_view body = std::string_view(spec).substr(6);
        long long n = 0;
        auto [ptr, ec] =
            std::from_chars(body.data(), body.data() + body.size(), n);
        if (ec != std::errc() || ptr != body.data() + body.size() || n < 1) {
            throw Error("invalid --schedule const resolution '" +
                        std::string(body) + "'");
        }
        return constant_schedule(n, steps, sys.D, sys.M);
    }
    if (spec.rfind("file:", 0) == 0) {
        if (steps_given) {
            throw Error(
                "--schedule file:<path> defines its own step count; drop "
                "--steps");
        }
        return schedule_from_text(read_file(spec.substr(5)), sys.D, sys.M);
    }
    throw Error("unknown --schedule '" + spec +
                "'; use quad, optimal:<eps>, const:<n> or file:<path>");
}

std::string stats_csv(const RunStats& stats) {
    std::string out = "step,points,tuples,millis,eps_k,bound_k\n";
    for (const StepStats& s : stats.steps) {
        out += std::to_string(s.step);
        out += ',';
        out += std::to_string(s.points);
        out += ',';
        out += std::to_string(s.tuples);
        out += ',';
        out += fmt17(s.millis);
        out += ',';
        if (!std::isnan(s.eps_k)) out += fmt17(s.eps_k);
        out += ',';
        if (!std::isnan(s.bound_k)) out += fmt17(s.bound_k);
        out += '\n';
    }
    if (stats.partial) out += "# partial\n";
    return out;
}

std::string cert_csv(const std::vector<GapCertificate>& certs, bool partial) {
    std::string out = "step,n,eps_k,bound,measured,ok\n";
    for (const GapCertificate& c : certs) {
        out += std::to_string(c.k);
        out += ',';
        out += std::to_string(c.n);
        out += ',';
        out += fmt17(c.eps);
        out += ',';
        out += fmt17(c.bound);
        out += ',';
        out += fmt17(c.measured);
        out += ',';
        out += c.ok ? '1' : '0';
        out += '\n';
    }
    if (partial) out += "# partial\n";
    return out;
}

void print_system_line(const LoadedSystem& ls) {
    const GifsSystem& s = ls.system;
    std::cout << "system " << ls.label << ": M=" << s.M << " p=" << s.p
              << " D=" << fmt17(s.D) << " maps=" << s.L()
              << " C=" << fmt17(s.C) << '\n';
}

struct RunOptions {
    SystemSource source;
    std::string algo;
    int steps = 0;
    bool steps_given = false;
    std::string schedule_spec;
    std::string seed_spec;
    long long budget_flag = 0;
    bool budget_given = false;
    bool verify = false;
    std::string out_image;
    std::string out_stats;
    std::string out_cert;
    int width = 800;
    int height = 800;
};

int cmd_run(const RunOptions& opt) {
    const LoadedSystem ls = load_system(opt.source);
    const GifsSystem& sys = ls.system;
    TupleBudget budget{resolve_budget(opt.budget_given, opt.budget_flag)};
    const PointSet seed = opt.seed_spec.empty()
                              ? PointSet::cube_center(sys.M, sys.D)
                              : parse_seed(opt.seed_spec, sys.M);

    const bool is_grid = opt.algo == "grid" || opt.algo == "grid-round";
    if (is_grid == opt.schedule_spec.empty()) {
        throw Error(is_grid
                        ? "grid algorithms need --schedule"
                        : "--schedule only applies to grid algorithms");
    }
    if (opt.verify && !is_grid) {
        throw Error("--verify only applies to grid algorithms");
    }
    if (!opt.out_cert.empty() && !opt.verify) {
        throw Error("--cert needs --verify");
    }

    PointSet result;
    RunStats stats;
    std::vector<GapCertificate> certs;
    int requested = 0;
    if (opt.algo == "det") {
        if (!opt.steps_given || opt.steps < 0) {
            throw Error("--algo det needs --steps >= 0 (map applications)");
        }
        requested = opt.steps;
        auto run = deterministic_run(sys, seed, opt.steps + 1, budget);
        result = std::move(run.set);
        stats = std::move(run.stats);
    } else if (opt.algo == "memory-p") {
        if (!opt.steps_given || opt.steps < 1) {
            throw Error("--algo memory-p needs --steps >= 1");
        }
        requested = opt.steps;
        std::vector<PointSet> seeds(static_cast<std::size_t>(sys.p), seed);
        auto run = memory_p_run(sys, seeds, opt.steps, budget);
        result = std::move(run.set);
        stats = std::move(run.stats);
    } else {
        const GridSchedule schedule =
            make_schedule(opt.schedule_spec, opt.steps_given, opt.steps, sys);
        requested = schedule.steps();
        const SnapMode mode =
            opt.algo == "grid-round" ? SnapMode::Round : SnapMode::Floor;
        auto run = grid_run(sys, seed, schedule, mode, budget, opt.verify);
        result = std::move(run.set);
        stats = std::move(run.stats);
        certs = std::move(run.certificates);
    }

    if (!opt.out_image.empty()) {
        write_ppm(rasterize(result, opt.width, opt.height, sys.D),
                  opt.out_image);
    }
    if (!opt.out_stats.empty()) write_file(opt.out_stats, stats_csv(stats));
    if (!opt.out_cert.empty()) {
        write_file(opt.out_cert, cert_csv(certs, stats.partial));
    }

    print_system_line(ls);
    std::cout << "algorithm " << opt.algo << '\n'
              << "steps " << stats.completed_steps << '/' << requested << '\n'
              << "points " << result.size() << '\n';
    if (!stats.steps.empty() && !std::isnan(stats.steps.back().eps_k)) {
        std::cout << "final_eps " << fmt17(stats.steps.back().eps_k) << '\n'
                  << "bound " << fmt17(stats.steps.back().bound_k) << '\n';
    }
    if (opt.verify && !certs.empty()) {
        std::cout << "verify ok (" << certs.size() << " certificates)\n";
    }
    if (stats.clamp_warnings > 0) {
        std::cout << "clamp_warnings " << stats.clamp_warnings << '\n';
    }
    if (stats.partial) {
        std::cout << "partial: tuple budget exhausted after "
                  << stats.completed_steps << " steps\n";
        return 3;
    }
    return 0;
}

struct CompareOptions {
    SystemSource source;
    int det_steps = 0;
    std::string schedule_spec;
    int steps = 0;
    bool steps_given = false;
    bool round = false;
    std::string seed_spec;
    long long budget_flag = 0;
    bool budget_given = false;
    std::string out_csv;
    std::string out_det;
    std::string out_grid;
    int width = 800;
    int height = 800;
};

int cmd_compare(const CompareOptions& opt) {
    const LoadedSystem ls = load_system(opt.source);
    const GifsSystem& sys = ls.system;
    const long long limit = resolve_budget(opt.budget_given, opt.budget_flag);
    const PointSet seed = opt.seed_spec.empty()
                              ? PointSet::cube_center(sys.M, sys.D)
                              : parse_seed(opt.seed_spec, sys.M);
    if (opt.det_steps < 0) throw Error("--det-steps must be >= 0");
    const GridSchedule schedule =
        make_schedule(opt.schedule_spec, opt.steps_given, opt.steps, sys);

    // Each run gets a fresh budget of the same size.
    TupleBudget det_budget{limit};
    TupleBudget grid_budget{limit};
    auto det = deterministic_run(sys, seed, opt.det_steps + 1, det_budget);
    auto grid =
        grid_run(sys, seed, schedule,
                 opt.round ? SnapMode::Round : SnapMode::Floor, grid_budget,
                 false);
    const bool partial = det.stats.partial || grid.stats.partial;

    // Contraction bound after a applications: C^a * h(K0, K1) / (1 - C).
    TupleBudget one_step{limit};
    const PointSet k1 = g_step(sys, seed, one_step);
    const double det_bound = std::pow(sys.C, opt.det_steps) *
                             hausdorff(seed, k1).h / (1.0 - sys.C);
    const double grid_bound = error_bound(schedule, sys.C);
    const double h = hausdorff(det.set, grid.set).h;

    std::string csv = "h,det_bound,grid_bound,det_points,grid_points\n";
    csv += fmt17(h) + ',' + fmt17(det_bound) + ',' + fmt17(grid_bound) + ',' +
           std::to_string(det.set.size()) + ',' +
           std::to_string(grid.set.size()) + '\n';
    if (partial) csv += "# partial\n";

    if (!opt.out_det.empty()) {
        write_ppm(rasterize(det.set, opt.width, opt.height, sys.D),
                  opt.out_det);
    }
    if (!opt.out_grid.empty()) {
        write_ppm(rasterize(grid.set, opt.width, opt.height, sys.D),
                  opt.out_grid);
    }
    if (opt.out_csv.empty()) {
        std::cout << csv;
    } else {
        write_file(opt.out_csv, csv);
        print_system_line(ls);
        std::cout << "h " << fmt17(h) << '\n'
                  << "det_bound " << fmt17(det_bound) << '\n'
                  << "grid_bound " << fmt17(grid_bound) << '\n';
    }
    return partial ? 3 : 0;
}

struct CostOptions {
    long long x0 = 1;
    int L = 0;
    int p = 0;
    int M = 0;
    double C = 0.0;
    std::string eps_spec;
    std::string out_csv;
};

int cmd_cost(const CostOptions& opt) {
    CostParams params;
    params.x0 = opt.x0;
    params.L = opt.L;
    params.p = opt.p;
    params.M = opt.M;
    params.C = opt.C;
    std::vector<double> eps_list;
    for (std::string_view tok : split(opt.eps_spec, ',')) {
        eps_list.push_back(parse_double(tok, "--eps entry"));
    }
    const std::string csv = ratio_table_csv(eps_list, params);
    if (opt.out_csv.empty()) {
        std::cout << csv;
    } else {
        write_file(opt.out_csv, csv);
    }
    return 0;
}

void add_source_flags(CLI::App* cmd, SystemSource& src) {
    auto* b = cmd->add_option("--builtin", src.builtin_name,
                              "builtin example system: A, B or C");
    auto* f =
        cmd->add_option("--system", src.file_path, "path to a .gifs file");
    b->excludes(f);
    f->excludes(b);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gifsgen: attractor images of generalized iterated function systems"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand(
        "run", "run one algorithm and write image / stats / certificate");
    add_source_flags(run, run_opt.source);
    run->add_option("--algo", run_opt.algo, "algorithm")
        ->required()
        ->check(CLI::IsMember({"det", "grid", "grid-round", "memory-p"}));
    run->add_option("--steps", run_opt.steps,
                    "map applications (det, memory-p) or schedule length "
                    "(quad, const)");
    run->add_option("--schedule", run_opt.schedule_spec,
                    "grid schedule: quad | optimal:<eps> | const:<n> | "
                    "file:<path>");
    run->add_option("--seed", run_opt.seed_spec,
                    "seed points 'x1,y1;x2,y2;...' (default: cube center)");
    run->add_option("--budget", run_opt.budget_flag,
                    "tuple budget (overrides GIFS_BUDGET)");
    run->add_flag("--verify", run_opt.verify,
                  "measure per-step snapping gaps (grid only)");
    run->add_option("--out", run_opt.out_image, "output image (binary PPM)");
    run->add_option("--stats", run_opt.out_stats, "per-step stats CSV");
    run->add_option("--cert", run_opt.out_cert,
                    "gap certificate CSV (needs --verify)");
    run->add_option("--width", run_opt.width, "image width")
        ->check(CLI::PositiveNumber);
    run->add_option("--height", run_opt.height, "image height")
        ->check(CLI::PositiveNumber);

    CompareOptions cmp_opt;
    CLI::App* cmp = app.add_subcommand(
        "compare", "run det and grid on one system and compare");
    add_source_flags(cmp, cmp_opt.source);
    cmp->add_option("--det-steps", cmp_opt.det_steps,
                    "map applications for the deterministic run")
        ->required();
    cmp->add_option("--schedule", cmp_opt.schedule_spec,
                    "grid schedule: quad | optimal:<eps> | const:<n> | "
                    "file:<path>")
        ->required();
    cmp->add_option("--steps", cmp_opt.steps, "schedule length (quad, const)");
    cmp->add_flag("--round", cmp_opt.round, "use rounding snap for the grid");
    cmp->add_option("--seed", cmp_opt.seed_spec,
                    "seed points (default: cube center)");
    cmp->add_option("--budget", cmp_opt.budget_flag,
                    "tuple budget per run (overrides GIFS_BUDGET)");
    cmp->add_option("--out", cmp_opt.out_csv,
                    "comparison CSV path (default: stdout)");
    cmp->add_option("--out-det", cmp_opt.out_det, "deterministic-run image");
    cmp->add_option("--out-grid", cmp_opt.out_grid, "grid-run image");
    cmp->add_option("--width", cmp_opt.width, "image width")
        ->check(CLI::PositiveNumber);
    cmp->add_option("--height", cmp_opt.height, "image height")
        ->check(CLI::PositiveNumber);

    CostOptions cost_opt;
    CLI::App* cost = app.add_subcommand(
        "cost", "closed-form cost comparison table (CSV)");
    cost->add_option("--x0", cost_opt.x0, "initial point count (default 1)");
    cost->add_option("--L", cost_opt.L, "number of maps")->required();
    cost->add_option("--p", cost_opt.p, "system order")->required();
    cost->add_option("--M", cost_opt.M, "space dimension")->required();
    cost->add_option("--C", cost_opt.C, "contraction constant")->required();
    cost->add_option("--eps", cost_opt.eps_spec,
                     "comma-separated accuracy list")
        ->required();
    cost->add_option("--out", cost_opt.out_csv,
                     "CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    run_opt.steps_given = run->count("--steps") > 0;
    run_opt.budget_given = run->count("--budget") > 0;
    cmp_opt.steps_given = cmp->count("--steps") > 0;
    cmp_opt.budget_given = cmp->count("--budget") > 0;

    try {
        if (run->parsed()) return cmd_run(run_opt);
        if (cmp->parsed()) return cmd_compare(cmp_opt);
        return cmd_cost(cost_opt);
    } catch (const TupleBudgetExceeded& e) {
        std::cerr << "gifsgen: budget: " << e.what() << '\n';
        return 3;
    } catch (const ContractionViolation& e) {
        std::cerr << "gifsgen: certification: " << e.what() << '\n';
        return 2;
    } catch (const RangeViolation& e) {
        std::cerr << "gifsgen: certification: " << e.what() << '\n';
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "gifsgen: certification: " << e.what() << '\n';
        return 2;
    } catch (const VerificationFailure& e) {
        std::cerr << "gifsgen: certification: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "gifsgen: error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "gifsgen: error: " << e.what() << '\n';
        return 1;
    }
}
