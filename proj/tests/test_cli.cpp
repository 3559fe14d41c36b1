#include <doctest.h>

#include <cstdio>
#include <sys/wait.h>

#include "oscrank/set_literal.hpp"

using namespace oscrank;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
#ifdef OSCRANK_CLI_PATH
    std::string cmd = std::string(OSCRANK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
#else
    return {};
#endif
}

}  // namespace

TEST_CASE("set literals parse to exact sets") {
    auto line = parse_space("cutline");
    SymbolicSet a = parse_set_literal(line, "[0+,1-]");
    CHECK(a == line_interval_set(line, CutPoint::above(Rat(0)), true, CutPoint::below(Rat(1)), true));
    SymbolicSet pt = parse_set_literal(line, "{3}");
    CHECK(pt == SymbolicSet::point(cut_point(line, CutPoint::at(Rat(3)))));
    SymbolicSet u = parse_set_literal(line, "[-inf,0-] ∪ {1/2} | [2,+inf]");
    CHECK(u.member(cut_point(line, CutPoint::at(Rat(1, 2)))));
    CHECK(u.member(cut_point(line, CutPoint::minus_inf())));
    CHECK_FALSE(u.member(cut_point(line, CutPoint::at(Rat(1)))));
    CHECK(parse_set_literal(line, "{}").is_empty());
    SymbolicSet open_cell = parse_set_literal(line, "(0+,1]");
    CHECK_FALSE(open_cell.member(cut_point(line, CutPoint::above(Rat(0)))));
    CHECK(open_cell.member(cut_point(line, CutPoint::at(Rat(1)))));

    auto prod = parse_space("multiorder:2");
    SymbolicSet box = parse_set_literal(prod, "[0+,1-]×{3} | {-1}x{-1}");
    CHECK(box.member(product_point(prod, {CutPoint::at(Rat(1, 2)), CutPoint::at(Rat(3))})));
    CHECK(box.member(product_point(prod, {CutPoint::at(Rat(-1)), CutPoint::at(Rat(-1))})));
    CHECK_FALSE(box.member(product_point(prod, {CutPoint::at(Rat(1, 2)), CutPoint::at(Rat(0))})));

    auto cyc = parse_space("cyclic");
    SymbolicSet arc = parse_set_literal(cyc, "[0+,1/2-]");
    CHECK(arc.member(cyclic_point(cyc, CyclicPoint{CyclicPoint::Tag::Rat, Rat(1, 4)})));

    CHECK_THROWS_AS(parse_set_literal(line, "[0+,1-"), std::invalid_argument);
    CHECK_THROWS_AS(parse_set_literal(line, "what"), std::invalid_argument);
    CHECK_THROWS_AS(parse_set_literal(prod, "[0,1]"), std::invalid_argument);  // arity
    CHECK_THROWS_AS(parse_set_literal(cyc, "[-inf,0]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_set_literal(parse_space("cylinder"), "{3}"), std::invalid_argument);
}

TEST_CASE("cli exit codes and shapes") {
    CliRun ok = cli("rank --system multiorder:2 --map shift-limit --level 1");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"rank\":{\"finite\":2}") != std::string::npos);

    CliRun id = cli("rank --system dlo --map identity --level 3");
    CHECK(id.exit_code == 0);
    CHECK(id.out.find("\"rank\":{\"finite\":0}") != std::string::npos);

    CliRun inf = cli("rank --system cylinder --map tail-map --level 1");
    CHECK(inf.exit_code == 0);
    CHECK(inf.out.find("\"rank\":\"infinite\"") != std::string::npos);

    // spec errors exit 2
    CHECK(cli("rank --system nosuch --map identity --level 1").exit_code == 2);
    CHECK(cli("rank --system dlo --map nosuch --level 1").exit_code == 2);
    CHECK(cli("rank --system dlo --level 1").exit_code == 2);
    CHECK(cli("check --law nosuch").exit_code == 2);
    CHECK(cli("derive --system dlo --map identity --set \"[junk\"").exit_code == 2);

    // capped results exit 3 and stay capped in the report
    CliRun capped = cli("rank --system multiorder:2 --map shift-limit --level 1 --cap 1");
    CHECK(capped.exit_code == 3);
    CHECK(capped.out.find("\"capped\":1") != std::string::npos);

    // an explicit empty starting set derives to the single empty stage
    CliRun empty = cli("derive --system dlo --map stretch-limit --level 1 --set \"{}\"");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("\"stages\":[\"{}\"]") != std::string::npos);

    // ad hoc map specs parse on the command line
    CliRun pl = cli("rank --system dlo \"--map=plauto:(0,1)(1,3)\" --level 2");
    CHECK(pl.exit_code == 0);
    CHECK(pl.out.find("\"rank\":{\"finite\":0}") != std::string::npos);

    CliRun law = cli("check --law br-le-cb --grid small");
    CHECK(law.exit_code == 0);
    CHECK(law.out.find("\"pass\":true") != std::string::npos);
}
