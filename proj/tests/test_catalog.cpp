#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oscrank/catalog.hpp"
#include "oscrank/laws.hpp"

using namespace oscrank;

namespace {
std::string data_path(const std::string& name) {
    return std::string(OSCRANK_TEST_DATA_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/oscrank_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}
}  // namespace

TEST_CASE("system construction") {
    for (const std::string& spec :
         {"acf", "dlo", "cyclic", "multiorder:1", "multiorder:3", "cylinder"}) {
        SystemDescriptor sys = build_system(spec);
        CHECK(sys.spec == spec);
        CHECK(sys.find("identity") != nullptr);
        REQUIRE(sys.expected_system_beta.has_value());
    }
    CHECK_THROWS_AS(build_system("multiorder:0"), std::invalid_argument);
    CHECK_THROWS_AS(build_system("what"), std::invalid_argument);
}

TEST_CASE("catalog closed forms reproduce at level 4 with stabilization") {
    for (const std::string& spec : {"acf", "dlo", "cyclic", "multiorder:1", "multiorder:2"}) {
        SystemDescriptor sys = build_system(spec);
        for (const auto& e : sys.entries) {
            REQUIRE(e.expected_beta.has_value());
            BetaMapResult r = beta_of_map(e.map, 4);
            CAPTURE(spec);
            CAPTURE(e.map.name());
            CHECK(r.rank == *e.expected_beta);
            CHECK(r.stabilized);
        }
        RankValue system = beta_of_system(sys.claimed_maps(), 4);
        CHECK(system == *sys.expected_system_beta);
    }
    // cylinder: the unclaimed tail-map carries the infinite closed form
    SystemDescriptor cyl = build_system("cylinder");
    CHECK(beta_of_map(parse_map(cyl, "tail-map"), 3).rank == RankValue::infinite());
    CHECK(beta_of_system(cyl.claimed_maps(), 3) == RankValue::finite(0));
}

TEST_CASE("claimed maps pass their finite-stage net checks") {
    for (const std::string& spec : {"dlo", "acf", "cyclic", "multiorder:2"}) {
        SystemDescriptor sys = build_system(spec);
        for (const auto& e : sys.entries) {
            if (!e.map.claimed_in_ellis()) continue;
            std::string why;
            CAPTURE(spec);
            CAPTURE(e.map.name());
            CHECK(verify_net_limit(e, 4, 3, 64, &why));
            CAPTURE(why);
        }
    }
}

TEST_CASE("finite system loading") {
    SystemDescriptor z4 = build_system("finite:" + data_path("z4_rotation.json"));
    CHECK(z4.space->point_names.size() == 4);
    CHECK(z4.homeos.size() == 4);  // the four rotations, by exhaustive closure
    for (const auto& e : z4.entries) {
        CHECK(beta_of_map(e.map, 2).rank == RankValue::finite(0));
        SymbolicSet d = derivative(SymbolicSet::whole(z4.space), e.map,
                                   canonical_partition(z4.space, 1));
        CHECK(d.is_empty());  // every point of a discrete space is isolated
    }
    SystemDescriptor one = load_finite_system(data_path("one_point.json"));
    CHECK(one.homeos.size() == 1);  // the identity alone
    CHECK(beta_of_system(one.claimed_maps(), 2) == RankValue::finite(0));
}

TEST_CASE("finite system schema is strict") {
    CHECK_THROWS_AS(load_finite_system("/nonexistent/path.json"), std::invalid_argument);
    CHECK_THROWS_AS(load_finite_system(write_temp("nopoints.json", R"({"points": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        load_finite_system(write_temp("unknown.json", R"({"points": ["a"], "extra": 1})")),
        std::invalid_argument);
    CHECK_THROWS_AS(load_finite_system(write_temp(
                        "nonbij.json",
                        R"({"points": ["a", "b"], "generators": [[["a", "a"]]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_finite_system(write_temp(
                        "partial.json",
                        R"({"points": ["a", "b"], "maps": {"m": {"a": "b"}}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_finite_system(write_temp("badjson.json", "{")), std::invalid_argument);
}

TEST_CASE("map name parsing") {
    SystemDescriptor dlo = build_system("dlo");
    PiecewiseMap pl = parse_map(dlo, "plauto:(0,1)(1,3)");
    CHECK(to_string(pl.apply(cut_point(dlo.space, CutPoint::at(Rat(1, 2))))) == "2");
    CHECK(is_continuous(pl, 2));
    SystemDescriptor acf = build_system("acf");
    PiecewiseMap pm = parse_map(acf, "perm:(0 3)(1 2)");
    CHECK(to_string(pm.apply(compact_point(acf.space, CompactPoint::iso(0)))) == "iso:3");
    CHECK_THROWS_AS(parse_map(dlo, "no-such-map"), std::invalid_argument);
    CHECK_THROWS_AS(parse_map(dlo, "plauto:junk"), std::invalid_argument);
}

TEST_CASE("builtin rotation system") {
    SystemDescriptor z4 = builtin_z4_system();
    CHECK(z4.homeos.size() == 4);
    const CatalogEntry* fold = z4.find("fold");
    REQUIRE(fold != nullptr);
    CHECK(to_string(fold->map.apply(finite_point(z4.space, 1))) == "p0");
}

TEST_CASE("small law grid stays green") {
    // a cheap instance of every suite, so unit runs exercise the runners too
    GridOptions opt = GridOptions::small_grid();
    opt.systems = {"dlo", "acf"};
    opt.max_level = 2;
    opt.height = 3;
    for (const auto& res : run_laws("all", opt)) {
        CAPTURE(res.law);
        CAPTURE(res.failures.empty() ? "" : res.failures.front());
        CHECK(res.ok());
    }
    CHECK_THROWS_AS(run_law("no-such-law", opt), std::invalid_argument);
}
