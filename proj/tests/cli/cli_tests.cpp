// End-to-end tests for the gifsgen command-line tool.  Each case invokes the
// real executable through the shell, captures stdout/stderr into files inside
// a private temporary directory, and checks exit codes, report lines and the
// bytes of any files the tool writes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Directory for capture files and tool outputs, created once per process.
const std::string& work_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/gifs_cli_XXXXXX";
        char* made = ::mkdtemp(tmpl);
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

std::string work_path(const std::string& name) {
    return work_dir() + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "cannot open " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(out), "cannot write " << path);
    out << content;
}

bool file_exists(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return bool(in);
}

// Runs `gifsgen <args>` through /bin/sh; `env` is prepended verbatim so
// tests can set variables for a single invocation ("GIFS_BUDGET=99").
CliResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string out_path = work_path("capture_out.tmp");
    const std::string err_path = work_path("capture_err.tmp");
    std::string cmd;
    if (!env.empty()) cmd += env + " ";
    cmd += "\"" GIFSGEN_EXE "\" " + args;
    cmd += " >" + out_path + " 2>" + err_path;
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    REQUIRE(WIFEXITED(raw));
    CliResult r;
    r.exit_code = WEXITSTATUS(raw);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double to_double(const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    REQUIRE(end == text.c_str() + text.size());
    REQUIRE(errno == 0);
    return v;
}

// Extracts the value following "<key> " on its own report line.
std::string report_value(const std::string& out, const std::string& key) {
    for (const std::string& line : split_lines(out)) {
        if (line.rfind(key + " ", 0) == 0) {
            return line.substr(key.size() + 1);
        }
    }
    FAIL("report line '" << key << "' not found in:\n" << out);
    return {};
}

// Replaces the wall-clock millis column so two stats files can be compared.
std::string mask_millis(const std::string& csv) {
    std::string masked;
    for (const std::string& line : split_lines(csv)) {
        if (!line.empty() && (std::isdigit(static_cast<unsigned char>(line[0])) != 0)) {
            std::vector<std::string> f = split_csv(line);
            if (f.size() == 6) f[3] = "*";
            std::string joined;
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) joined += ',';
                joined += f[i];
            }
            masked += joined;
        } else {
            masked += line;
        }
        masked += '\n';
    }
    return masked;
}

std::string ppm_header(int w, int h) {
    return "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

}  // namespace

TEST_CASE("deterministic run prints the standard report") {
    CliResult r = run_cli("run --builtin A --algo det --steps 2");
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(contains(r.out, "system A: M=2 p=2 D=1 maps=3 C=0.456155281280883"));
    CHECK(contains(r.out, "algorithm det\n"));
    CHECK(contains(r.out, "steps 2/2\n"));
    CHECK(contains(r.out, "points 27\n"));
    // Deterministic runs have no lattice accuracy, so no eps/bound lines.
    CHECK_FALSE(contains(r.out, "final_eps"));
    CHECK_FALSE(contains(r.out, "\nbound "));
    CHECK_FALSE(contains(r.out, "partial"));
}

TEST_CASE("zero deterministic steps returns the seed itself") {
    CliResult r = run_cli("run --builtin A --algo det --steps 0");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "steps 0/0\n"));
    CHECK(contains(r.out, "points 1\n"));
}

TEST_CASE("grid run writes image, stats and certificates") {
    const std::string img = work_path("attractor.ppm");
    const std::string stats = work_path("steps.csv");
    const std::string cert = work_path("gaps.csv");
    CliResult r = run_cli(
        "run --builtin A --algo grid --schedule quad --steps 8 --verify"
        " --out " + img + " --stats " + stats + " --cert " + cert);
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(contains(r.out, "system A: M=2 p=2 D=1 maps=3 C=0.456155281280883"));
    CHECK(contains(r.out, "algorithm grid\n"));
    CHECK(contains(r.out, "steps 8/8\n"));
    CHECK(contains(r.out, "points 51\n"));
    CHECK(contains(r.out, "final_eps 0.022097086912079612\n"));
    CHECK(contains(r.out, "bound 0.067383907418527136\n"));
    CHECK(contains(r.out, "verify ok (8 certificates)\n"));

    // The image is a binary PPM at the default 800x800 extent.
    const std::string ppm = slurp(img);
    CHECK(ppm.size() == ppm_header(800, 800).size() + 800u * 800u * 3u);
    CHECK(ppm.rfind(ppm_header(800, 800), 0) == 0);

    // Stats: header, one row per step, 17-significant-digit numeric fields.
    const std::vector<std::string> srows = split_lines(slurp(stats));
    REQUIRE(srows.size() == 9);
    CHECK(srows[0] == "step,points,tuples,millis,eps_k,bound_k");
    {
        std::vector<std::string> f = split_csv(srows[1]);
        REQUIRE(f.size() == 6);
        CHECK(f[0] == "1");
        CHECK(f[1] == "1");
        CHECK(f[2] == "3");
        CHECK(f[4] == "1.4142135623730951");
        CHECK(f[5] == "2.0593145477086341");
    }
    {
        std::vector<std::string> f = split_csv(srows[8]);
        REQUIRE(f.size() == 6);
        CHECK(f[0] == "8");
        CHECK(f[1] == "51");
        CHECK(f[2] == "3468");
        CHECK(f[4] == "0.022097086912079612");
        CHECK(f[5] == "0.067383907418527136");
    }

    // Certificates: every step verified, floor snapping bounds eps itself.
    const std::vector<std::string> crows = split_lines(slurp(cert));
    REQUIRE(crows.size() == 9);
    CHECK(crows[0] == "step,n,eps_k,bound,measured,ok");
    for (std::size_t i = 1; i < crows.size(); ++i) {
        std::vector<std::string> f = split_csv(crows[i]);
        REQUIRE(f.size() == 6);
        CHECK(f[0] == std::to_string(i));
        CHECK(f[2] == f[3]);
        CHECK(to_double(f[4]) <= to_double(f[3]) + 1e-9);
        CHECK(f[5] == "1");
    }
    CHECK(split_csv(crows[1])[1] == "1");
    CHECK(split_csv(crows[8])[1] == "64");
}

TEST_CASE("repeated runs produce identical output apart from timings") {
    const std::string stats_a = work_path("det_a.csv");
    const std::string stats_b = work_path("det_b.csv");
    const std::string args =
        "run --builtin A --algo grid --schedule quad --steps 6 --verify";
    CliResult a = run_cli(args + " --stats " + stats_a);
    CliResult b = run_cli(args + " --stats " + stats_b);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(mask_millis(slurp(stats_a)) == mask_millis(slurp(stats_b)));
}

TEST_CASE("image extents are configurable") {
    const std::string img = work_path("small.ppm");
    CliResult r = run_cli("run --builtin A --algo det --steps 2 --out " + img +
                          " --width 10 --height 10");
    CHECK(r.exit_code == 0);
    const std::string ppm = slurp(img);
    CHECK(ppm.size() == ppm_header(10, 10).size() + 10u * 10u * 3u);
    CHECK(ppm.rfind(ppm_header(10, 10), 0) == 0);
}

TEST_CASE("memory-p run reports its algorithm and step count") {
    CliResult r = run_cli("run --builtin A --algo memory-p --steps 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "algorithm memory-p\n"));
    CHECK(contains(r.out, "steps 3/3\n"));
}

TEST_CASE("rounding grid with a constant schedule") {
    CliResult r = run_cli(
        "run --builtin A --algo grid-round --schedule const:16 --steps 2"
        " --verify");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "algorithm grid-round\n"));
    CHECK(contains(r.out, "steps 2/2\n"));
    CHECK(contains(r.out, "verify ok (2 certificates)\n"));
    CHECK(contains(r.out, "final_eps "));
}

TEST_CASE("optimal schedule picks its own step count from the accuracy") {
    CliResult r = run_cli("run --builtin A --algo grid --schedule optimal:0.1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "steps 17/17\n"));
    const double bound = to_double(report_value(r.out, "bound"));
    CHECK(bound <= 0.1 + 1e-12);
    CHECK(bound == doctest::Approx(0.098093249538797278).epsilon(1e-12));
}

TEST_CASE("explicit seed points are parsed and used") {
    CliResult r =
        run_cli("run --builtin A --algo det --steps 1 --seed '0,0;1,1'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "points 12\n"));
}

TEST_CASE("a system file behaves like the matching builtin") {
    CliResult r = run_cli("run --system \"" GIFS_SOURCE_DIR
                          "/systems/a.gifs\" --algo det --steps 2");
    CHECK(r.exit_code == 0);
    // The file carries its name in a comment, so the label is "A".
    CHECK(contains(r.out, "system A: M=2 p=2"));
    CHECK(contains(r.out, "points 27\n"));
}

TEST_CASE("an unnamed system file is labelled by its path") {
    const std::string path = work_path("contract_to_half.gifs");
    spit(path, "gifs 1\ndims 1 1 1\nmap f\n0.5 0.25\n");
    CliResult r = run_cli("run --system " + path + " --algo det --steps 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "system " + path + ": M=1 p=1"));
    // The cube centre is this map's fixed point, so the set never grows.
    CHECK(contains(r.out, "points 1\n"));
}

TEST_CASE("schedule resolutions can come from a file") {
    const std::string sched = work_path("sched.txt");
    spit(sched, "1\n4\n9\n");
    CliResult r = run_cli("run --builtin A --algo grid --schedule file:" +
                          sched);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "steps 3/3\n"));

    CliResult missing = run_cli(
        "run --builtin A --algo grid --schedule file:" + work_path("no.txt"));
    CHECK(missing.exit_code == 1);
    CHECK(contains(missing.err, "gifsgen: error: "));
    CHECK(contains(missing.err, "cannot read"));
}

TEST_CASE("clamping systems report how often points were pulled back") {
    CliResult r = run_cli(
        "run --builtin B --algo det --steps 1 --seed '0,1;0,0'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "clamp_warnings "));
}

TEST_CASE("usage mistakes exit with code 1") {
    struct Case {
        const char* args;
        const char* stderr_piece;  // empty: only the exit code is pinned
    };
    const Case cases[] = {
        {"", ""},
        {"frobnicate", ""},
        {"run --builtin A --steps 2", ""},           // --algo is required
        {"run --builtin A --algo walk --steps 2", ""},
        {"run --algo det --steps 2",
         "give exactly one of --builtin or --system"},
        {"run --builtin A --system x.gifs --algo det --steps 2", ""},
        {"run --builtin D --algo det --steps 2", "known names are A, B, C"},
        {"run --builtin A --algo det", "--algo det needs --steps >= 0"},
        {"run --builtin A --algo det --steps -1",
         "--algo det needs --steps >= 0"},
        {"run --builtin A --algo memory-p --steps 0",
         "--algo memory-p needs --steps >= 1"},
        {"run --builtin A --algo det --steps 2 --schedule quad",
         "--schedule only applies to grid algorithms"},
        {"run --builtin A --algo grid --steps 4",
         "grid algorithms need --schedule"},
        {"run --builtin A --algo grid --schedule quad",
         "--schedule quad needs --steps"},
        {"run --builtin A --algo grid --schedule optimal:0.1 --steps 3",
         "drop --steps"},
        {"run --builtin A --algo grid --schedule const:4",
         "--schedule const:<n> needs --steps"},
        {"run --builtin A --algo grid --schedule const:zero --steps 3",
         "invalid --schedule const resolution 'zero'"},
        {"run --builtin A --algo grid --schedule bogus --steps 3",
         "unknown --schedule 'bogus'"},
        {"run --builtin A --algo det --steps 2 --verify",
         "--verify only applies to grid algorithms"},
        {"run --builtin A --algo grid --schedule quad --steps 4 --cert x.csv",
         "--cert needs --verify"},
        {"run --builtin A --algo det --steps 2 --seed '0,0;1'",
         "has 1 coordinates, expected 2"},
        {"run --builtin A --algo det --steps 2 --seed garbage", ""},
        {"run --builtin A --algo det --steps 2 --width 0", ""},
        {"run --builtin A --algo det --steps 2 --budget 0",
         "--budget must be at least 1"},
        {"compare --builtin A --det-steps 3", ""},   // --schedule is required
        {"cost --L 3 --p 2 --M 2 --C 0.5", ""},      // --eps is required
        {"cost --L 3 --p 2 --M 2 --C 0.5 --eps nope",
         "invalid --eps entry: 'nope'"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.args);
        CliResult r = run_cli(c.args);
        CHECK(r.exit_code == 1);
        if (c.stderr_piece[0] != '\0') {
            CHECK(contains(r.err, "gifsgen: error: "));
            CHECK(contains(r.err, c.stderr_piece));
        }
    }
}

TEST_CASE("certification failures exit with code 2") {
    const std::string expanding = work_path("expanding.gifs");
    spit(expanding, "gifs 1\ndims 1 1 1\nmap f\n1.5 0\n");
    CliResult r = run_cli("run --system " + expanding +
                          " --algo det --steps 2");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "gifsgen: certification: "));
    CHECK(contains(r.err, "map 1 has certified Lipschitz bound 1.500000"));

    const std::string escaping = work_path("escaping.gifs");
    spit(escaping, "gifs 1\ndims 1 1 1\nmap f\n0.5 0.9\n");
    CliResult esc = run_cli("run --system " + escaping +
                            " --algo det --steps 2");
    CHECK(esc.exit_code == 2);
    CHECK(contains(esc.err, "gifsgen: certification: "));

    CliResult seed = run_cli(
        "run --builtin A --algo det --steps 1 --seed '1.5,0'");
    CHECK(seed.exit_code == 2);
    CHECK(contains(seed.err, "gifsgen: certification: "));
    CHECK(contains(seed.err, "seed points must lie in [0, D]^M"));

    CliResult cost = run_cli("cost --L 3 --p 2 --M 2 --C 1.2 --eps 0.1");
    CHECK(cost.exit_code == 2);
    CHECK(contains(cost.err, "gifsgen: certification: "));
}

TEST_CASE("tuple budget exhaustion exits with code 3") {
    const std::string stats = work_path("partial.csv");
    CliResult r = run_cli(
        "run --builtin A --algo det --steps 6 --budget 1000000 --stats " +
        stats);
    CHECK(r.exit_code == 3);
    CHECK(contains(r.out, "steps 3/6\n"));
    CHECK(contains(r.out, "partial: tuple budget exhausted after 3 steps\n"));
    const std::string csv = slurp(stats);
    CHECK(csv.size() >= 10);
    CHECK(csv.substr(csv.size() - 10) == "# partial\n");
}

TEST_CASE("GIFS_BUDGET environment variable sets the default budget") {
    const std::string args =
        "run --builtin A --algo grid --schedule quad --steps 8";
    CliResult tight = run_cli(args, "GIFS_BUDGET=99");
    CHECK(tight.exit_code == 3);
    CHECK(contains(tight.out, "partial: tuple budget exhausted"));

    // An explicit --budget flag overrides the environment.
    CliResult widened = run_cli(args + " --budget 2000000000",
                                "GIFS_BUDGET=99");
    CHECK(widened.exit_code == 0);
    CHECK(contains(widened.out, "steps 8/8\n"));

    CliResult bad = run_cli(args, "GIFS_BUDGET=abc");
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.err, "invalid GIFS_BUDGET value 'abc'"));

    CliResult zero = run_cli(args, "GIFS_BUDGET=0");
    CHECK(zero.exit_code == 1);
    CHECK(contains(zero.err, "invalid GIFS_BUDGET value '0'"));
}

TEST_CASE("compare prints a CSV row relating the two runs") {
    CliResult r = run_cli(
        "compare --builtin A --det-steps 4 --schedule quad --steps 8");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = split_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "h,det_bound,grid_bound,det_points,grid_points");
    const std::vector<std::string> f = split_csv(lines[1]);
    REQUIRE(f.size() == 5);
    const double h = to_double(f[0]);
    const double det_bound = to_double(f[1]);
    const double grid_bound = to_double(f[2]);
    CHECK(h == doctest::Approx(0.021587236771759388).epsilon(1e-12));
    CHECK(det_bound == doctest::Approx(0.04171825944410984).epsilon(1e-12));
    CHECK(grid_bound == doctest::Approx(0.067383907418527136).epsilon(1e-12));
    // The two runs approximate the same attractor, so the distance between
    // them is controlled by the sum of their error bounds.
    CHECK(h <= det_bound + grid_bound + 1e-12);
    CHECK(f[4] == "51");
    CHECK(to_double(f[3]) >= 1.0);

    CliResult rounded = run_cli(
        "compare --builtin A --det-steps 3 --schedule quad --steps 8 --round");
    CHECK(rounded.exit_code == 0);
    CHECK(contains(rounded.out, "h,det_bound,grid_bound"));
}

TEST_CASE("compare with --out writes files and a summary") {
    const std::string csv_path = work_path("cmp.csv");
    const std::string det_img = work_path("cmp_det.ppm");
    const std::string grid_img = work_path("cmp_grid.ppm");
    CliResult r = run_cli(
        "compare --builtin A --det-steps 3 --schedule quad --steps 8 --out " +
        csv_path + " --out-det " + det_img + " --out-grid " + grid_img);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "system A: M=2 p=2"));
    CHECK(contains(r.out, "h "));
    CHECK(contains(r.out, "det_bound "));
    CHECK(contains(r.out, "grid_bound "));
    CHECK_FALSE(contains(r.out, "h,det_bound"));  // CSV goes to the file
    const std::vector<std::string> lines = split_lines(slurp(csv_path));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "h,det_bound,grid_bound,det_points,grid_points");
    // The summary repeats the same numbers the CSV holds.
    CHECK(report_value(r.out, "h") == split_csv(lines[1])[0]);
    CHECK(report_value(r.out, "det_bound") == split_csv(lines[1])[1]);
    CHECK(report_value(r.out, "grid_bound") == split_csv(lines[1])[2]);
    REQUIRE(file_exists(det_img));
    REQUIRE(file_exists(grid_img));
    CHECK(slurp(det_img).rfind(ppm_header(800, 800), 0) == 0);
    CHECK(slurp(grid_img).rfind(ppm_header(800, 800), 0) == 0);
}

TEST_CASE("compare propagates budget exhaustion as exit code 3") {
    CliResult r = run_cli(
        "compare --builtin A --det-steps 6 --schedule quad --steps 8"
        " --budget 1000000");
    CHECK(r.exit_code == 3);
    CHECK(contains(r.out, "# partial\n"));
}

TEST_CASE("cost prints the asymptotic comparison table") {
    CliResult r = run_cli("cost --L 3 --p 2 --M 2 --C 0.5 --eps 0.1,0.01,0.001");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = split_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "eps,ln_cost_grid,ln_cost_det,ln_ratio");
    const std::vector<std::string> row1 = split_csv(lines[1]);
    REQUIRE(row1.size() == 4);
    CHECK(to_double(row1[0]) == 0.1);
    CHECK(to_double(row1[2]) ==
          doctest::Approx(10.986122886681096).epsilon(1e-13));
    // Finer accuracy shifts the balance further towards the grid algorithm.
    double prev = to_double(split_csv(lines[1])[3]);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const double ratio = to_double(split_csv(lines[i])[3]);
        CHECK(ratio < prev);
        prev = ratio;
    }

    const std::string out_csv = work_path("costs.csv");
    CliResult filed = run_cli(
        "cost --L 3 --p 2 --M 2 --C 0.5 --eps 0.1,0.01 --out " + out_csv);
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(split_lines(slurp(out_csv)).size() == 3);
}

TEST_CASE("help is available and exits cleanly") {
    CliResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "gifsgen"));
    CHECK(contains(r.out, "run"));
    CHECK(contains(r.out, "compare"));
    CHECK(contains(r.out, "cost"));
}
