#pragma once
// Segment iteration in floating point, disk compactification of the real plane, rasterization.

#include "lfr/projgeom.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfr {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Direction { Forward, Backward, Both };

struct RenderConfig {
    ParamPair params;                      // real, approximate variant
    std::array<double, 4> segment{};       // x0, y0, x1, y1
    int iterations = 8;
    int pointsPerSegment = 20000;
    int width = 512, height = 512;
    Direction direction = Direction::Both;
    bool annotate = false;
    int orbitOfQ = 0;  // annotate f^j q for j < orbitOfQ

    static constexpr int kMaxIterations = 64;
    void validate() const;
};

struct CloudPoint {
    std::array<double, 3> h;  // homogeneous, max-norm 1
    int gen = 0;
    bool backward = false;
};

struct PointCloud {
    std::vector<CloudPoint> points;
};

// serial reference and the OpenMP version; identical output
PointCloud iterate_segment_serial(const RenderConfig& cfg);
PointCloud iterate_segment(const RenderConfig& cfg);

// (x, y) * rho(r) / r with rho(r) = r / (1 + r)
std::array<double, 2> disk_project(double x, double y);
// same for a homogeneous point; the line at infinity goes to the unit circle
std::array<double, 2> disk_project_h(const std::array<double, 3>& h);

struct Raster {
    int width = 0, height = 0;
    std::vector<uint8_t> px;  // row-major gray, 255 = white
    bool operator==(const Raster& o) const = default;
};

constexpr uint8_t kBlack = 0, kGray = 128, kWhite = 255;

std::array<int, 2> disk_to_pixel(const std::array<double, 2>& d, int width, int height);
Raster rasterize_serial(const PointCloud& cloud, int width, int height);
Raster rasterize(const PointCloud& cloud, int width, int height);

struct Annotation {
    std::string label;
    std::array<double, 3> h;
    std::array<double, 2> disk;
    std::array<int, 2> pixel;
};

std::vector<Annotation> special_annotations(const RenderConfig& cfg);

struct RenderResult {
    Raster raster;
    std::vector<Annotation> annotations;
    size_t forwardPoints = 0, backwardPoints = 0;
};

RenderResult render(const RenderConfig& cfg);
// writes PNG when the path ends in .png, plain PGM otherwise
RenderResult render_lamination(const RenderConfig& cfg, const std::string& outPath);

void write_png(const Raster& r, const std::string& path);
void write_pgm(const Raster& r, const std::string& path);

// two fixed maps with their drawing settings
RenderConfig preset_fig01();
RenderConfig preset_figA1();

}  // namespace lfr
