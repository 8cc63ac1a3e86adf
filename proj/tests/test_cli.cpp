#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commands.hpp"
#include "lfr/textio.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using json = nlohmann::json;
using namespace lfr;

struct Run {
    int rc;
    std::string out, err;
    json j() const { return json::parse(out); }
};

static Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lfr");
    std::ostringstream out, err;
    int rc = cli::run(args, out, err);
    return {rc, out.str(), err.str()};
}

TEST_CASE("classify") {
    auto r = run({"classify", "--normal-form", "1,0"});
    REQUIRE(r.rc == 0);
    auto j = r.j();
    CHECK(j["schema_version"] == 1);
    CHECK(j["class"] == "periodic");
    CHECK(j["period"] == 5);
    CHECK(j["orbit_structure"] == "c:1,1,2");
    auto q = run({"classify", "--map", "nf:2,0"}).j();
    CHECK(q["class"] == "quadratic");
    auto e = run({"classify", "--map", "f64:1/10,3/10"}).j();
    CHECK(e["class"] == "exponential");
    CHECK(e["delta"]["value"].get<double>() == doctest::Approx(1.6180339887));
    auto n = run({"classify", "--map", "fig01"}).j();
    CHECK(n["numerical"] == true);
}

TEST_CASE("delta and charpoly") {
    auto r = run({"delta", "--lists", "c:1,1;c:8"});
    REQUIRE(r.rc == 0);
    auto d = r.j()["delta"];
    CHECK(d["lo"].get<double>() <= d["value"].get<double>());
    CHECK(d["value"].get<double>() <= d["hi"].get<double>());
    auto c = run({"delta", "--coeffs", "-1,-1,1"}).j();
    CHECK(c["delta"]["value"].get<double>() == doctest::Approx(1.6180339887));
    auto n = run({"delta", "--n", "7"}).j();
    CHECK(n["delta"]["value"].get<double>() > 1.0);
    auto p = run({"charpoly", "--lists", "c:1,1,7"}).j();
    CHECK(p["charpoly"]["text"] == "x^10 - x^8 - x^7 + x^3 + x^2 - 1");
    CHECK(p["root_one_multiplicity"] == 3);
    CHECK(run({"charpoly", "--lists", "c:1,1,2"}).j()["periodicity_order"] == 5);
    CHECK(run({"delta", "--coeffs", "1,0,1"}).rc == 1);
}

TEST_CASE("vn, catalog, oracle, orbit") {
    CHECK(run({"vn", "--a", "0", "--b", "0"}).j()["n"] == 0);
    CHECK(run({"vn", "--a", "1/2+1/2*i", "--b", "i"}).j()["n"] == 2);
    CHECK(run({"vn", "--a", "2", "--b", "3"}).j()["n"].is_null());
    auto cat = run({"catalog"}).j();
    CHECK(cat["entries"].size() == 7);
    auto o = run({"oracle", "--normal-form", "1,0", "--k", "10", "--kappa-max", "6"}).j();
    CHECK(o["degrees"] == json::array({2, 2, 2, 2, 1, 2, 2, 2, 2, 1}));
    CHECK(o["identity_order"] == 5);
    CHECK(o["fit"]["name"] == "bounded");
    auto orb = run({"orbit", "--normal-form", "2,0"}).j();
    CHECK(orb["structure"] == "c:1,1,7");
    CHECK(orb["orbits"][2]["length"] == 7);
    CHECK(orb["orbits"][2]["terminal"]["kind"] == "hit");
}

TEST_CASE("scan") {
    auto r = run({"scan", "--a", "-1,2,7", "--b", "0,0,1"});
    REQUIRE(r.rc == 0);
    auto rows = r.j()["rows"];
    REQUIRE(rows.size() == 7);
    for (auto& row : rows) {
        std::string a = row["a"];
        if (a == "0.0" || a == "1.0") continue;
        CHECK(row["n"] == 6);
        CHECK(row["flags"][0] == "V6");
    }
    bool v1 = false;
    for (auto& row : rows) v1 = v1 || (row["a"] == "1.0" && row["n"] == 1);
    CHECK(v1);
    auto gen = run({"scan", "--a", "2,2,1", "--b", "3,3,1"}).j()["rows"][0];
    CHECK(gen["class"] == "exponential");
    CHECK(gen["delta_lo"].get<double>() == doctest::Approx(1.3247179572).epsilon(1e-6));
    auto csv = run({"scan", "--a", "0,1,2", "--b", "0,0,1", "--format", "csv"});
    CHECK(csv.out.rfind("a,b,class,n,delta_lo,delta_hi,flags\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
    // parallel rows match the serial reference
    auto par = run({"scan", "--a", "-2,2,5", "--b", "-1,1,3"}).j()["rows"];
    auto ser = run({"scan", "--a", "-2,2,5", "--b", "-1,1,3", "--serial"}).j()["rows"];
    CHECK(par == ser);
    auto ex = run({"scan", "--a", "0.5,0.5,1", "--b", "0,0,1", "--exact"}).j()["rows"][0];
    CHECK(ex["a"] == "1/2");
    CHECK(ex["n"] == 6);
}

TEST_CASE("render") {
    std::string out = (std::filesystem::temp_directory_path() / "lfr_cli_render.png").string();
    auto r = run({"render", "--preset", "fig01", "--points", "500", "--size", "100x80", "--annotate", "--out", out});
    REQUIRE(r.rc == 0);
    auto j = r.j();
    CHECK(j["width"] == 100);
    CHECK(j["height"] == 80);
    CHECK(std::filesystem::exists(out));
    std::remove(out.c_str());
    CHECK(run({"render", "--preset", "fig01", "--dir", "sideways", "--out", out}).rc == 1);
    CHECK(run({"render", "--preset", "fig01", "--out", "/nonexistent-dir/x.png", "--points", "10"}).rc == 1);
}

TEST_CASE("exit codes") {
    auto bad = run({"classify", "--map", "ab:1,2,3,2,4,6"});
    CHECK(bad.rc == 2);
    CHECK(bad.j()["error"]["kind"] == "inadmissible");
    CHECK(run({"vn", "--a", "1/0", "--b", "0"}).rc == 1);
    CHECK(run({"classify", "--map", "nf:1"}).rc == 1);
    CHECK(run({"classify", "--bogus"}).rc == 1);
    CHECK(run({}).rc == 1);
    CHECK(run({"charpoly", "--lists", "x:1"}).rc == 1);
    CHECK(run({"classify", "--help"}).rc == 0);
    // random junk never succeeds silently or escapes as an exception
    std::mt19937 rng(9);
    const char* words[] = {"classify", "vn", "--a", "--b", "--map", "nf:", "1/2", "i", "--k", "-3", "x", ",", "0"};
    for (int t = 0; t < 200; ++t) {
        std::vector<std::string> args;
        int n = 1 + int(rng() % 5);
        for (int k = 0; k < n; ++k) args.push_back(words[rng() % 13]);
        int rc = -1;
        CHECK_NOTHROW(rc = run(args).rc);
        CHECK((rc == 0 || rc == 1 || rc == 2));
    }
}

TEST_CASE("text forms") {
    for (const char* s : {"c:1,1,7", "o:1", "o:2,1;c:3", "c:1,1;c:8"}) CHECK(list_spec_str(parse_list_spec(s)) == s);
    CHECK_THROWS_AS(parse_list_spec("c:"), ParseError);
    CHECK_THROWS_AS(parse_list_spec("c:1,0"), ParseError);
    CHECK(parse_map("nf:2,3").beta[0] == parse_scalar("3"));
    CHECK(parse_map("nf:1/2+1/2*i,i").kind() == Kind::Gaussian);
    CHECK(parse_map("nf:1,i").alpha[0].kind() == Kind::Gaussian);
    CHECK(parse_map("f64:1/10,3/10").beta[2] == parse_scalar("3/10"));
    CHECK(parse_map("fig01").kind() == Kind::Approx);
    CHECK_THROWS_AS(parse_map("xy:1,2"), ParseError);
    CHECK(snap_rational(0.333333333, 10) == mpq_class(1, 3));
    CHECK(snap_rational(-2.5, 64) == mpq_class(-5, 2));
    CHECK(snap_rational(3.14159265, 7) == mpq_class(22, 7));
}

TEST_CASE("output formats") {
    auto csv = run({"vn", "--a", "0", "--b", "0", "--format", "csv"});
    CHECK(csv.out.rfind("key,value\n", 0) == 0);
    CHECK(csv.out.find("n,0\n") != std::string::npos);
    auto pretty = run({"vn", "--a", "0", "--b", "0", "--pretty"});
    CHECK(pretty.out.find("n: 0\n") != std::string::npos);
    auto v = run({"verify"});
    CHECK(v.rc == 0);
    CHECK(v.j()["all_pass"] == true);
    auto vm = run({"verify", "--normal-form", "2,3"});
    CHECK(vm.rc == 0);
}
