#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfr/jetflow.hpp"
#include "lfr/renderlab.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace lfr;

static RenderConfig small(RenderConfig c) {
    c.pointsPerSegment = 2000;
    c.width = c.height = 200;
    return c;
}

static std::string tmp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("lfr_test_" + name)).string();
}

TEST_CASE("disk projection") {
    auto o = disk_project(0, 0);
    CHECK(o[0] == 0);
    CHECK(o[1] == 0);
    auto d = disk_project(3, 4);
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(4.0 / 6.0));
    auto far = disk_project(3e9, 4e9);
    CHECK(std::hypot(far[0], far[1]) == doctest::Approx(1.0));
    CHECK(std::hypot(far[0], far[1]) < 1.0);
    CHECK(far[0] / far[1] == doctest::Approx(0.75));
    double prev = 0;
    for (double r = 0.1; r < 100; r *= 1.7) {
        double rho = std::hypot(disk_project(r, 0)[0], disk_project(r, 0)[1]);
        CHECK(rho > prev);
        CHECK(rho < 1);
        prev = rho;
    }
    auto h = disk_project_h({2, 6, 8});
    CHECK(h[0] == doctest::Approx(disk_project(3, 4)[0]));
    CHECK(h[1] == doctest::Approx(disk_project(3, 4)[1]));
    auto inf = disk_project_h({0, 1, 0});
    CHECK(inf[0] == doctest::Approx(1.0));
    CHECK(inf[1] == doctest::Approx(0.0));
}

TEST_CASE("segment iteration") {
    RenderConfig c = small(preset_fig01());
    c.iterations = 0;
    c.direction = Direction::Forward;
    auto cloud = iterate_segment(c);
    REQUIRE(cloud.points.size() == size_t(c.pointsPerSegment));
    for (auto& p : cloud.points) CHECK(p.gen == 0);
    auto first = cloud.points.front().h, last = cloud.points.back().h;
    CHECK(first[1] / first[0] == doctest::Approx(c.segment[0]));
    CHECK(last[2] / last[0] == doctest::Approx(c.segment[3]));

    c.iterations = 6;
    c.direction = Direction::Both;
    auto cl = iterate_segment(c);
    for (auto& p : cl.points)
        for (double v : p.h) CHECK(std::isfinite(v));
    size_t fwd = 0, bwd = 0;
    for (auto& p : cl.points) (p.backward ? bwd : fwd)++;
    CHECK(fwd > 0);
    CHECK(bwd > 0);
}

TEST_CASE("serial and parallel kernels agree") {
    for (RenderConfig c : {small(preset_fig01()), small(preset_figA1())}) {
        auto a = iterate_segment_serial(c), b = iterate_segment(c);
        REQUIRE(a.points.size() == b.points.size());
        bool same = true;
        for (size_t i = 0; i < a.points.size(); ++i)
            same = same && a.points[i].h == b.points[i].h && a.points[i].gen == b.points[i].gen &&
                   a.points[i].backward == b.points[i].backward;
        CHECK(same);
        CHECK(rasterize_serial(a, c.width, c.height) == rasterize(b, c.width, c.height));
    }
}

TEST_CASE("configuration checks") {
    RenderConfig c = small(preset_fig01());
    c.segment = {1, 1, 1, 1};
    CHECK_THROWS_AS(iterate_segment(c), std::invalid_argument);
    c = small(preset_fig01());
    c.iterations = RenderConfig::kMaxIterations + 1;
    CHECK_THROWS_AS(iterate_segment(c), std::invalid_argument);
    c = small(preset_fig01());
    c.params.alpha[0] = FieldElem::approx({0, 1});
    CHECK_THROWS_AS(iterate_segment(c), std::invalid_argument);
}

TEST_CASE("render is deterministic and sized") {
    RenderConfig c = small(preset_fig01());
    c.width = 160;
    c.height = 120;
    auto a = render(c), b = render(c);
    CHECK(a.raster == b.raster);
    CHECK(a.raster.width == 160);
    CHECK(a.raster.height == 120);
    CHECK(a.raster.px.size() == size_t(160 * 120));
    bool hasBlack = false, hasGray = false;
    for (auto v : a.raster.px) {
        hasBlack = hasBlack || v == kBlack;
        hasGray = hasGray || v == kGray;
    }
    CHECK(hasBlack);
    CHECK(hasGray);
}

TEST_CASE("annotations") {
    RenderConfig c = small(preset_fig01());
    auto ann = special_annotations(c);
    std::map<std::string, Annotation> by;
    for (auto& a : ann) by[a.label] = a;
    for (const char* l : {"e1", "e2", "p0", "pgamma", "q", "r"}) REQUIRE(by.count(l));
    for (auto& a : ann) CHECK(std::hypot(a.disk[0], a.disk[1]) <= 1.0 + 1e-12);
    // q = (0,0), pgamma = (-b, 0) with b = 1/10 ... in affine terms (-0.1, 0); r = (10/3, 0)
    CHECK(by["q"].disk[0] == doctest::Approx(0.0));
    CHECK(by["r"].disk[0] == doctest::Approx(disk_project(10.0 / 3.0, 0)[0]));
    CHECK(by["pgamma"].disk[0] == doctest::Approx(disk_project(-0.1, 0)[0]));
    CHECK(by["e1"].disk[0] == doctest::Approx(1.0));

    RenderConfig a1 = small(preset_figA1());
    auto orb = special_annotations(a1);
    std::map<std::string, Annotation> ob;
    for (auto& a : orb) ob[a.label] = a;
    for (int j = 0; j < 8; ++j) REQUIRE(ob.count(std::to_string(j)));
    CHECK(ob["7"].disk[0] == doctest::Approx(ob["pgamma"].disk[0]).epsilon(1e-4));
    CHECK(ob["7"].disk[1] == doctest::Approx(ob["pgamma"].disk[1]).epsilon(1e-4));
}

TEST_CASE("backward orbit of p_gamma reaches p_0 in three steps") {
    RenderConfig c = preset_fig01();
    auto g = derive_geometry(c.params);
    BlowupRegistry reg;
    reg.add(base_point(g.e1), 0);
    SurfacePoint P = base_point(g.pGamma);
    P = transport_point(c.params, reg, P, true);
    CHECK(P.is_fiber());
    P = transport_point(c.params, reg, P, true);
    CHECK_FALSE(P.base() == g.p0);
    P = transport_point(c.params, reg, P, true);
    CHECK(P.base() == g.p0);
}

TEST_CASE("image files") {
    RenderConfig c = small(preset_fig01());
    std::string png = tmp("fig.png"), pgm = tmp("fig.pgm");
    auto r = render_lamination(c, png);
    render_lamination(c, pgm);
    std::ifstream in(png, std::ios::binary);
    char sig[8];
    in.read(sig, 8);
    CHECK(std::string(sig + 1, 3) == "PNG");
    std::ifstream g(pgm, std::ios::binary);
    std::string magic;
    int w = 0, h = 0, mx = 0;
    g >> magic >> w >> h >> mx;
    CHECK(magic == "P5");
    CHECK(w == c.width);
    CHECK(h == c.height);
    CHECK(std::filesystem::file_size(pgm) == size_t(c.width * c.height) + std::string("P5\n200 200\n255\n").size());
    std::remove(png.c_str());
    std::remove(pgm.c_str());
    CHECK_THROWS_AS(render_lamination(c, "/nonexistent-dir/x.png"), IoError);
    CHECK_THROWS_AS(render_lamination(c, "/nonexistent-dir/x.pgm"), IoError);
    (void)r;
}
