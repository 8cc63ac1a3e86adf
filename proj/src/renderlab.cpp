#include "lfr/renderlab.hpp"

#include "lfr/jetflow.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lfr {

void RenderConfig::validate() const {
    if (segment[0] == segment[2] && segment[1] == segment[3]) throw std::invalid_argument("degenerate segment");
    if (iterations < 0 || iterations > kMaxIterations) throw std::invalid_argument("iterations out of range");
    if (pointsPerSegment < 2) throw std::invalid_argument("need at least two samples per segment");
    if (width < 8 || height < 8) throw std::invalid_argument("image too small");
    for (int i = 0; i < 3; ++i)
        for (const FieldElem* e : {&params.alpha[i], &params.beta[i]})
            if (std::abs(e->to_complex().imag()) > 0) throw std::invalid_argument("render needs real parameters");
}

namespace {

struct RealMap {
    double a[3], b[3];
    explicit RealMap(const ParamPair& p) {
        for (int i = 0; i < 3; ++i) {
            a[i] = p.alpha[i].to_complex().real();
            b[i] = p.beta[i].to_complex().real();
        }
    }
    static bool normalize(std::array<double, 3>& h) {
        double m = std::max({std::abs(h[0]), std::abs(h[1]), std::abs(h[2])});
        if (!(m > 0) || !std::isfinite(m)) return false;
        for (auto& x : h) x /= m;
        return true;
    }
    bool forward(std::array<double, 3>& x) const {
        double bx = b[0] * x[0] + b[1] * x[1] + b[2] * x[2];
        double ax = a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
        x = {x[0] * bx, x[2] * bx, x[0] * ax};
        return normalize(x);
    }
    bool backward(std::array<double, 3>& x) const {
        double Bx = -a[1] * x[0] + b[1] * x[2];
        double Ax = a[0] * x[0] + a[2] * x[1] - b[0] * x[2];
        x = {x[0] * Bx, x[0] * Ax - b[2] * x[1] * x[2], x[1] * Bx};
        return normalize(x);
    }
};

// orbit of one sample; returns the number of points written
int sample_orbit(const RealMap& m, const RenderConfig& cfg, int s, bool back, CloudPoint* out) {
    double t = double(s) / double(cfg.pointsPerSegment - 1);
    std::array<double, 3> h{1.0, cfg.segment[0] + t * (cfg.segment[2] - cfg.segment[0]),
                            cfg.segment[1] + t * (cfg.segment[3] - cfg.segment[1])};
    if (!RealMap::normalize(h)) return 0;
    int n = 0;
    for (int g = 0; g <= cfg.iterations; ++g) {
        out[n++] = {h, g, back};
        if (g == cfg.iterations) break;
        if (!(back ? m.backward(h) : m.forward(h))) break;
    }
    return n;
}

std::vector<bool> directions(const RenderConfig& cfg) {
    if (cfg.direction == Direction::Forward) return {false};
    if (cfg.direction == Direction::Backward) return {true};
    return {true, false};
}

}  // namespace

PointCloud iterate_segment_serial(const RenderConfig& cfg) {
    cfg.validate();
    RealMap m(cfg.params);
    PointCloud c;
    std::vector<CloudPoint> buf(cfg.iterations + 1);
    for (bool back : directions(cfg))
        for (int s = 0; s < cfg.pointsPerSegment; ++s) {
            int n = sample_orbit(m, cfg, s, back, buf.data());
            c.points.insert(c.points.end(), buf.begin(), buf.begin() + n);
        }
    return c;
}

PointCloud iterate_segment(const RenderConfig& cfg) {
    cfg.validate();
    RealMap m(cfg.params);
    const int stride = cfg.iterations + 1;
    PointCloud c;
    for (bool back : directions(cfg)) {
        const int S = cfg.pointsPerSegment;
        std::vector<CloudPoint> slots(size_t(S) * stride);
        std::vector<int> count(S);
#pragma omp parallel for schedule(static)
        for (int s = 0; s < S; ++s) count[s] = sample_orbit(m, cfg, s, back, slots.data() + size_t(s) * stride);
        for (int s = 0; s < S; ++s)
            c.points.insert(c.points.end(), slots.begin() + size_t(s) * stride,
                            slots.begin() + size_t(s) * stride + count[s]);
    }
    return c;
}

std::array<double, 2> disk_project(double x, double y) {
    double r = std::hypot(x, y);
    return {x / (1 + r), y / (1 + r)};
}

std::array<double, 2> disk_project_h(const std::array<double, 3>& h) {
    double s = h[0] < 0 ? -1.0 : 1.0;
    double den = std::abs(h[0]) + std::hypot(h[1], h[2]);
    return {s * h[1] / den, s * h[2] / den};
}

std::array<int, 2> disk_to_pixel(const std::array<double, 2>& d, int width, int height) {
    const int m = 4;
    int px = int(std::lround((d[0] + 1) / 2 * (width - 1 - 2 * m))) + m;
    int py = int(std::lround((1 - d[1]) / 2 * (height - 1 - 2 * m))) + m;
    return {std::clamp(px, 0, width - 1), std::clamp(py, 0, height - 1)};
}

namespace {

void splat(uint8_t* px, int width, int height, const CloudPoint& p) {
    auto q = disk_to_pixel(disk_project_h(p.h), width, height);
    uint8_t& v = px[size_t(q[1]) * width + q[0]];
    v = std::min(v, p.backward ? kGray : kBlack);
}

}  // namespace

Raster rasterize_serial(const PointCloud& cloud, int width, int height) {
    Raster r{width, height, std::vector<uint8_t>(size_t(width) * height, kWhite)};
    for (auto& p : cloud.points) splat(r.px.data(), width, height, p);
    return r;
}

Raster rasterize(const PointCloud& cloud, int width, int height) {
    Raster r{width, height, std::vector<uint8_t>(size_t(width) * height, kWhite)};
    const long N = long(cloud.points.size());
#pragma omp parallel
    {
        std::vector<uint8_t> tile(r.px.size(), kWhite);
#pragma omp for schedule(static) nowait
        for (long i = 0; i < N; ++i) splat(tile.data(), width, height, cloud.points[i]);
#pragma omp critical
        for (size_t i = 0; i < tile.size(); ++i) r.px[i] = std::min(r.px[i], tile[i]);
    }
    return r;
}

namespace {

std::array<double, 3> to_real(const ProjPoint& p) {
    std::array<double, 3> h;
    for (int i = 0; i < 3; ++i) h[i] = p.coords()[i].to_complex().real();
    RealMap::normalize(h);
    return h;
}

Annotation make_annotation(const std::string& label, const ProjPoint& p, const RenderConfig& cfg) {
    Annotation a{label, to_real(p), {}, {}};
    a.disk = disk_project_h(a.h);
    a.pixel = disk_to_pixel(a.disk, cfg.width, cfg.height);
    return a;
}

}  // namespace

std::vector<Annotation> special_annotations(const RenderConfig& cfg) {
    std::vector<Annotation> out;
    const ParamPair& p = cfg.params;
    DerivedGeometry g = derive_geometry(p);
    if (cfg.annotate) {
        out.push_back(make_annotation("e1", g.e1, cfg));
        out.push_back(make_annotation("e2", g.e2, cfg));
        out.push_back(make_annotation("p0", g.p0, cfg));
        out.push_back(make_annotation("pgamma", g.pGamma, cfg));
        out.push_back(make_annotation("q", g.q, cfg));
        // r = f^3 Sigma_beta, followed through the blow-up of e1
        try {
            BlowupRegistry reg;
            reg.add(base_point(g.e1), 0);
            SurfacePoint P = base_point(g.e2);
            for (int k = 0; k < 2; ++k) P = transport_point(p, reg, P);
            if (!P.is_fiber()) out.push_back(make_annotation("r", P.base(), cfg));
        } catch (const std::exception&) {
        }
    }
    if (cfg.orbitOfQ > 0) {
        BlowupRegistry reg;
        reg.add(base_point(g.e1), 0);
        if (!(g.e2 == g.e1)) reg.add(base_point(g.e2), 0);
        SurfacePoint P = base_point(g.q);
        for (int j = 0; j < cfg.orbitOfQ; ++j) {
            out.push_back(make_annotation(std::to_string(j), P.base(), cfg));
            try {
                P = transport_point(p, reg, P);
            } catch (const std::exception&) {
                break;
            }
        }
    }
    return out;
}

RenderResult render(const RenderConfig& cfg) {
    PointCloud c = iterate_segment(cfg);
    RenderResult res;
    for (auto& p : c.points) (p.backward ? res.backwardPoints : res.forwardPoints)++;
    res.raster = rasterize(c, cfg.width, cfg.height);
    res.annotations = special_annotations(cfg);
    Raster& r = res.raster;
    for (auto& a : res.annotations)
        for (int d = -3; d <= 3; ++d) {
            int x = a.pixel[0] + d, y = a.pixel[1] + d;
            if (x >= 0 && x < r.width) r.px[size_t(a.pixel[1]) * r.width + x] = kBlack;
            if (y >= 0 && y < r.height) r.px[size_t(y) * r.width + a.pixel[0]] = kBlack;
        }
    return res;
}

void write_pgm(const Raster& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    out << "P5\n" << r.width << " " << r.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(r.px.data()), std::streamsize(r.px.size()));
    if (!out) throw IoError("write failed: " + path);
}

void write_png(const Raster& r, const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot open " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("png encoding failed: " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, r.width, r.height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < r.height; ++y)
        png_write_row(png, const_cast<png_bytep>(r.px.data() + size_t(y) * r.width));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0) throw IoError("write failed: " + path);
}

RenderResult render_lamination(const RenderConfig& cfg, const std::string& outPath) {
    RenderResult res = render(cfg);
    bool png = outPath.size() >= 4 && outPath.compare(outPath.size() - 4, 4, ".png") == 0;
    if (png) write_png(res.raster, outPath);
    else write_pgm(res.raster, outPath);
    return res;
}

RenderConfig preset_fig01() {
    RenderConfig c;
    auto r = [](double v) { return FieldElem::approx(v); };
    c.params = ParamPair{{r(0), r(0), r(1)}, {r(0.1), r(1), r(0.3)}};
    c.segment = {-3.0, -1.7, 2.5, 2.9};
    c.iterations = 10;
    c.pointsPerSegment = 40000;
    c.width = c.height = 600;
    c.annotate = true;
    return c;
}

RenderConfig preset_figA1() {
    RenderConfig c;
    c.params = ParamPair::normal_form(FieldElem::approx(-0.499497), FieldElem::approx(-0.415761));
    c.segment = {-3.0, -1.7, 2.5, 2.9};
    c.iterations = 10;
    c.pointsPerSegment = 40000;
    c.width = c.height = 600;
    c.annotate = true;
    c.orbitOfQ = 8;
    return c;
}

}  // namespace lfr
