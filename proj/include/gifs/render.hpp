#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gifs/point_set.hpp"

namespace gifs {

// Binary occupancy image. Row 0 is the BOTTOM row (y grows upward, the
// mathematical convention), so a point near the origin appears at the lower
// left of the written image.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // row-major from the bottom, 0 or 1

    bool get(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y) {
        bits[static_cast<std::size_t>(y) * width + x] = 1;
    }
    std::size_t occupancy() const;
};

// Maps each point's selected coordinate pair through the viewport
//   px = clamp(floor(x_i / D * width),  0, width - 1)
//   py = clamp(floor(x_j / D * height), 0, height - 1)
// and sets those pixels. For 1-dimensional sets the vertical axis is ignored
// and all points land on row 0 (a height-1 strip). For M >= 3 the selected
// axis pair is an orthogonal projection. Throws DimensionMismatch for axes
// outside [0, M).
Raster rasterize(const PointSet& points, int width, int height, double D,
                 int axis_x = 0, int axis_y = 1);

// Binary PPM encoding: "P6\n<width> <height>\n255\n" then rows top-to-bottom,
// set pixels black (0,0,0), clear pixels white (255,255,255). Byte-exact.
std::vector<std::uint8_t> ppm_bytes(const Raster& raster);

// Writes ppm_bytes to a file; failures throw IoError with the path.
void write_ppm(const Raster& raster, const std::string& path);

}  // namespace gifs
