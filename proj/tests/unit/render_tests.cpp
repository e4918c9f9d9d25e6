// Rasterization and the byte-exact PPM encoding.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gifs/algorithms.hpp"
#include "gifs/errors.hpp"
#include "gifs/render.hpp"
#include "gifs/schedule.hpp"
#include "gifs/sysio.hpp"
#include "test_util.hpp"

using namespace gifs;

TEST_CASE("a single set pixel produces the golden one-by-one image") {
    const Raster r = rasterize(PointSet::single({0.5, 0.5}), 1, 1, 1.0);
    const std::vector<std::uint8_t> expected{'P', '6', '\n', '1', ' ', '1',
                                             '\n', '2', '5', '5', '\n',
                                             0,   0,   0};
    CHECK(ppm_bytes(r) == expected);
    CHECK(r.occupancy() == 1);
}

TEST_CASE("clear pixels are white and set pixels are black") {
    // Two columns, one row: only the left pixel is hit.
    const Raster r = rasterize(PointSet::single({0.1, 0.1}), 2, 1, 1.0);
    const std::vector<std::uint8_t> expected{'P', '6', '\n', '2', ' ', '1',
                                             '\n', '2', '5', '5', '\n',
                                             0,   0,   0,   255, 255, 255};
    CHECK(ppm_bytes(r) == expected);
}

TEST_CASE("file rows run top to bottom while y grows upward") {
    // The origin lands on raster row 0 (bottom), hence on the LAST file row.
    const Raster r = rasterize(PointSet::single({0.0, 0.0}), 1, 2, 1.0);
    const std::vector<std::uint8_t> expected{'P', '6', '\n', '1', ' ', '2',
                                             '\n', '2', '5', '5', '\n',
                                             255, 255, 255, 0, 0, 0};
    CHECK(ppm_bytes(r) == expected);
    CHECK(r.get(0, 0));
    CHECK_FALSE(r.get(0, 1));
}

TEST_CASE("the viewport maps both cube corners onto the image") {
    const PointSet corners = PointSet::raw(2, {0.0, 0.0, 2.5, 2.5});
    const Raster r = rasterize(corners, 10, 10, 2.5);
    CHECK(r.occupancy() == 2);
    CHECK(r.get(0, 0));
    CHECK(r.get(9, 9));  // the far face clamps to the last pixel
}

TEST_CASE("coincident pixels count once in the occupancy") {
    const PointSet close_pair = PointSet::raw(2, {0.01, 0.01, 0.02, 0.02});
    CHECK(rasterize(close_pair, 4, 4, 1.0).occupancy() == 1);
}

TEST_CASE("a computed attractor image has one pixel per lattice point") {
    const GifsSystem sys = builtin("A");
    TupleBudget b;
    const GridRunResult run =
        grid_run(sys, PointSet::cube_center(2, 1.0),
                 quadratic_schedule(8, 1.0, 2), SnapMode::Floor, b);
    REQUIRE(run.set.size() == 51);
    const Raster r = rasterize(run.set, 800, 800, 1.0);
    // At 12.5 pixels per lattice cell no two points share a pixel.
    CHECK(r.occupancy() == 51);
    CHECK(ppm_bytes(r).size() == 15 + 800u * 800u * 3u);
}

TEST_CASE("one-dimensional sets render as a single-row strip") {
    const PointSet pts = PointSet::raw(1, {0.0, 0.99});
    const Raster r = rasterize(pts, 4, 7, 1.0);  // requested height ignored
    CHECK(r.height == 1);
    CHECK(r.width == 4);
    CHECK(r.occupancy() == 2);
    CHECK(r.get(0, 0));
    CHECK(r.get(3, 0));
    // The vertical axis is ignored entirely, even an out-of-range one.
    CHECK(rasterize(pts, 4, 7, 1.0, 0, 5).height == 1);
}

TEST_CASE("higher-dimensional sets project onto the chosen axis pair") {
    const PointSet pt = PointSet::single({0.1, 0.2, 0.9});
    const Raster xz = rasterize(pt, 10, 10, 1.0, 0, 2);
    CHECK(xz.get(1, 9));
    CHECK_FALSE(xz.get(1, 2));
    const Raster xy = rasterize(pt, 10, 10, 1.0, 0, 1);
    CHECK(xy.get(1, 2));
}

TEST_CASE("invalid raster requests are rejected") {
    const PointSet pts = PointSet::single({0.5, 0.5});
    CHECK_THROWS_AS(rasterize(pts, 0, 10, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(rasterize(pts, 10, 0, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(rasterize(pts, 10, 10, 0.0), DimensionMismatch);
    CHECK_THROWS_AS(
        rasterize(pts, 10, 10, std::numeric_limits<double>::infinity()),
        DimensionMismatch);
    CHECK_THROWS_AS(rasterize(pts, 10, 10, 1.0, 2, 1), DimensionMismatch);
    CHECK_THROWS_AS(rasterize(pts, 10, 10, 1.0, -1, 1), DimensionMismatch);
    CHECK_THROWS_AS(rasterize(pts, 10, 10, 1.0, 0, 2), DimensionMismatch);
    CHECK_THROWS_AS(rasterize(PointSet{}, 10, 10, 1.0), DimensionMismatch);
}

TEST_CASE("written image files round-trip and failures carry the path") {
    const Raster r = rasterize(PointSet::single({0.0, 0.0}), 3, 2, 1.0);
    const std::string path = "render_roundtrip_tmp.ppm";
    write_ppm(r, path);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    const auto bytes = ppm_bytes(r);
    CHECK(content ==
          std::string(reinterpret_cast<const char*>(bytes.data()),
                      bytes.size()));
    in.close();
    std::remove(path.c_str());

    try {
        write_ppm(r, "/nonexistent_dir_zz9/out.ppm");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir_zz9/out.ppm") !=
              std::string::npos);
    }
}
