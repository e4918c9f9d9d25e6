#include "gifs/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gifs/errors.hpp"

namespace gifs {

namespace {

int viewport(double v, double D, int extent) {
    const int px = static_cast<int>(
        std::floor(v / D * static_cast<double>(extent)));
    return std::clamp(px, 0, extent - 1);
}

}  // namespace

std::size_t Raster::occupancy() const {
    return static_cast<std::size_t>(
        std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

Raster rasterize(const PointSet& points, int width, int height, double D,
                 int axis_x, int axis_y) {
    if (width < 1 || height < 1) {
        throw DimensionMismatch("raster extents must be at least 1x1");
    }
    if (!(D > 0.0) || !std::isfinite(D)) {
        throw DimensionMismatch("raster needs a positive cube edge length");
    }
    const int M = points.dimension();
    const bool flat = M == 1;
    if (axis_x < 0 || axis_x >= M ||
        (!flat && (axis_y < 0 || axis_y >= M))) {
        throw DimensionMismatch("projection axes must lie in [0, M)");
    }
    Raster r;
    r.width = width;
    r.height = flat ? 1 : height;
    r.bits.assign(static_cast<std::size_t>(r.width) *
                      static_cast<std::size_t>(r.height),
                  0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto pt = points.point(i);
        const int px = viewport(pt[static_cast<std::size_t>(axis_x)], D,
                                r.width);
        const int py =
            flat ? 0
                 : viewport(pt[static_cast<std::size_t>(axis_y)], D, r.height);
        r.set(px, py);
    }
    return r;
}

std::vector<std::uint8_t> ppm_bytes(const Raster& raster) {
    const std::string header = "P6\n" + std::to_string(raster.width) + ' ' +
                               std::to_string(raster.height) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + static_cast<std::size_t>(raster.width) *
                                    static_cast<std::size_t>(raster.height) *
                                    3);
    out.insert(out.end(), header.begin(), header.end());
    // File rows run top-to-bottom; raster rows are stored bottom-up.
    for (int y = raster.height - 1; y >= 0; --y) {
        for (int x = 0; x < raster.width; ++x) {
            const std::uint8_t v = raster.get(x, y) ? 0 : 255;
            out.push_back(v);
            out.push_back(v);
            out.push_back(v);
        }
    }
    return out;
}

void write_ppm(const Raster& raster, const std::string& path) {
    const auto bytes = ppm_bytes(raster);
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    const std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
    const int closed = std::fclose(f);
    if (written != bytes.size() || closed != 0) {
        throw IoError("short write to '" + path + "'");
    }
}

}  // namespace gifs
