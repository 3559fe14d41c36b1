#include <doctest.h>

#include "oscrank/catalog.hpp"
#include "oscrank/oracle.hpp"

using namespace oscrank;

namespace {

SymbolicSet at_least_bottom(const SpacePtr& sp, int j) {
    // union of boxes with at least j coordinates pinned at -inf
    int n = sp->kind == SpaceKind::Product ? sp->arity : 1;
    LineInterval minf = *make_line_interval(CutPoint::minus_inf(), true, CutPoint::minus_inf(), true);
    LineInterval full = *make_line_interval(CutPoint::minus_inf(), true, CutPoint::plus_inf(), true);
    std::vector<Box> boxes;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != j) continue;
        Box b;
        for (int i = 0; i < n; ++i) b.push_back(mask & (1u << i) ? minf : full);
        boxes.push_back(std::move(b));
    }
    if (n == 1) {
        std::vector<LineInterval> iv;
        for (auto& b : boxes) iv.push_back(b[0]);
        return SymbolicSet::line(sp, std::move(iv));
    }
    return SymbolicSet::product(sp, std::move(boxes));
}

}  // namespace

TEST_CASE("rank values") {
    CHECK(RankValue::sup({}) == RankValue::finite(0));
    CHECK(RankValue::sup({RankValue::finite(1), RankValue::finite(3)}) == RankValue::finite(3));
    CHECK(RankValue::sup({RankValue::finite(1), RankValue::infinite()}) == RankValue::infinite());
    CHECK(RankValue::sup({RankValue::finite(9), RankValue::capped(64)}) == RankValue::capped(64));
    CHECK(*RankValue::le(RankValue::finite(2), RankValue::infinite()));
    CHECK_FALSE(*RankValue::le(RankValue::infinite(), RankValue::finite(2)));
    CHECK_FALSE(RankValue::le(RankValue::capped(3), RankValue::finite(5)).has_value());
}

TEST_CASE("derivative of the empty set and error paths") {
    SystemDescriptor dlo = build_system("dlo");
    PiecewiseMap f = parse_map(dlo, "stretch-limit");
    Partition p = canonical_partition(dlo.space, 1);
    CHECK(derivative(SymbolicSet::empty(dlo.space), f, p).is_empty());
    SymbolicSet not_closed = line_interval_set(dlo.space, CutPoint::above(Rat(0)), false,
                                               CutPoint::plus_inf(), true);
    CHECK_THROWS_AS(derivative(not_closed, f, p), std::invalid_argument);
    Partition wrong = canonical_partition(parse_space("cyclic"), 1);
    CHECK_THROWS_AS(derivative(SymbolicSet::whole(dlo.space), f, wrong), std::invalid_argument);
    CHECK_THROWS_AS(iterate_derivative(SymbolicSet::whole(dlo.space), f, p, 0),
                    std::invalid_argument);
}

TEST_CASE("first derivative of shift-limit marks the bottom coordinates") {
    SystemDescriptor mo2 = build_system("multiorder:2");
    PiecewiseMap f = parse_map(mo2, "shift-limit");
    Partition p = canonical_partition(mo2.space, 1);
    SymbolicSet d = derivative(SymbolicSet::whole(mo2.space), f, p);
    CHECK(d == at_least_bottom(mo2.space, 1));
    CHECK(d == derivative_pairwise(SymbolicSet::whole(mo2.space), f, p));
}

TEST_CASE("first derivative of stretch-limit is the cut above zero") {
    SystemDescriptor dlo = build_system("dlo");
    PiecewiseMap f = parse_map(dlo, "stretch-limit");
    NamedPoint plus0 = cut_point(dlo.space, CutPoint::above(Rat(0)));
    for (int level = 1; level <= 4; ++level) {
        Partition p = canonical_partition(dlo.space, level);
        SymbolicSet d = derivative(SymbolicSet::whole(dlo.space), f, p);
        CHECK(d == SymbolicSet::point(plus0));
        // brute-force confirmation
        OscillationReport rep = witness_search(f, p, plus0, SymbolicSet::whole(dlo.space), 4, 3);
        CHECK(rep.witnessed_everywhere());
    }
}

TEST_CASE("iterated chains on the catalog") {
    // multiorder:3, shift-limit: 5 stages of strictly shrinking corner unions
    SystemDescriptor mo3 = build_system("multiorder:3");
    PiecewiseMap f = parse_map(mo3, "shift-limit");
    DerivativeChain chain = iterate_derivative(SymbolicSet::whole(mo3.space), f,
                                               canonical_partition(mo3.space, 1));
    CHECK(chain.termination == Termination::Empty);
    REQUIRE(chain.stages.size() == 5);
    for (int j = 0; j <= 3; ++j) {
        SymbolicSet expected = at_least_bottom(mo3.space, j);
        for (int k = j + 1; k <= 3; ++k) expected = expected.unite(at_least_bottom(mo3.space, k));
        CHECK(chain.stages[j] == expected);
    }
    CHECK(chain.stages[4].is_empty());

    // tail-map with a separating partition: fixed point at the whole space
    SystemDescriptor cyl = build_system("cylinder");
    PiecewiseMap tail = parse_map(cyl, "tail-map");
    DerivativeChain tchain = iterate_derivative(SymbolicSet::whole(cyl.space), tail,
                                                canonical_partition(cyl.space, 1));
    CHECK(tchain.termination == Termination::FixedPoint);
    CHECK(tchain.stages.size() == 1);
    CHECK(tchain.stages[0] == SymbolicSet::whole(cyl.space));

    // continuous group maps die at the first stage
    SystemDescriptor dlo = build_system("dlo");
    DerivativeChain ichain = iterate_derivative(SymbolicSet::whole(dlo.space),
                                                parse_map(dlo, "scale-2"),
                                                canonical_partition(dlo.space, 2));
    CHECK(ichain.termination == Termination::Empty);
    CHECK(ichain.stages.size() == 2);
}

TEST_CASE("beta of pairs") {
    for (int n = 1; n <= 3; ++n) {
        SystemDescriptor sys = build_system("multiorder:" + std::to_string(n));
        CHECK(beta_of_pair(parse_map(sys, "shift-limit"), canonical_partition(sys.space, 1)) ==
              RankValue::finite(n));
    }
    // the trivial one-class partition kills every rank
    SystemDescriptor dlo = build_system("dlo");
    CHECK(beta_of_pair(parse_map(dlo, "stretch-limit"), trivial_partition(dlo.space)) ==
          RankValue::finite(0));
    SystemDescriptor cyl = build_system("cylinder");
    CHECK(beta_of_pair(parse_map(cyl, "tail-map"), trivial_partition(cyl.space)) ==
          RankValue::finite(0));
    CHECK(beta_of_pair(parse_map(cyl, "tail-map"), canonical_partition(cyl.space, 1)) ==
          RankValue::infinite());
    // restricting to the empty set gives the empty-sup convention
    CHECK(beta_of_pair(parse_map(dlo, "identity"), canonical_partition(dlo.space, 1),
                       SymbolicSet::empty(dlo.space)) == RankValue::finite(0));
}

TEST_CASE("beta of maps stabilizes on the catalog") {
    SystemDescriptor dlo = build_system("dlo");
    BetaMapResult r = beta_of_map(parse_map(dlo, "stretch-limit"), 4);
    CHECK(r.rank == RankValue::finite(1));
    CHECK(r.stabilized);
    BetaMapResult id = beta_of_map(parse_map(dlo, "identity"), 3);
    CHECK(id.rank == RankValue::finite(0));
    CHECK(id.stabilized);
    SystemDescriptor mo2 = build_system("multiorder:2");
    BetaMapResult sl = beta_of_map(parse_map(mo2, "shift-limit"), 3);
    CHECK(sl.rank == RankValue::finite(2));
    CHECK(sl.stabilized);
}

TEST_CASE("beta of systems") {
    SystemDescriptor acf = build_system("acf");
    CHECK(beta_of_system(acf.claimed_maps(), 3) == RankValue::finite(0));
    SystemDescriptor cyc = build_system("cyclic");
    CHECK(beta_of_system(cyc.claimed_maps(), 3) == RankValue::finite(1));
    SystemDescriptor mo3 = build_system("multiorder:3");
    CHECK(beta_of_system(mo3.claimed_maps(), 2) == RankValue::finite(3));
    CHECK_THROWS_AS(beta_of_system({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(beta_of_system({parse_map(cyc, "cyclic-collapse")}, 2),
                    std::invalid_argument);  // the identity must be present
    // subgroup flavour: a smaller catalog never exceeds a larger one
    auto le = RankValue::le(beta_of_system({parse_map(cyc, "identity")}, 3),
                            beta_of_system(cyc.claimed_maps(), 3));
    CHECK(*le);
}

TEST_CASE("point ranks") {
    SystemDescriptor mo3 = build_system("multiorder:3");
    PiecewiseMap f = parse_map(mo3, "shift-limit");
    Partition p = canonical_partition(mo3.space, 1);
    NamedPoint two_bottom = product_point(
        mo3.space, {CutPoint::minus_inf(), CutPoint::minus_inf(), CutPoint::at(Rat(0))});
    CHECK(point_rank(f, p, two_bottom) == RankValue::finite(2));
    NamedPoint all_rat =
        product_point(mo3.space, {CutPoint::at(Rat(3)), CutPoint::at(Rat(1)), CutPoint::at(Rat(4))});
    CHECK(point_rank(f, p, all_rat) == RankValue::finite(0));
    OscillationReport rep = witness_search(f, p, all_rat, SymbolicSet::whole(mo3.space), 2, 2);
    for (const auto& lv : rep.levels) CHECK_FALSE(lv.witnessed);  // locally constant region
    SystemDescriptor dlo = build_system("dlo");
    PiecewiseMap id = parse_map(dlo, "identity");
    for (const auto& x : named_samples(dlo.space, 3))
        CHECK(point_rank(id, canonical_partition(dlo.space, 2), x) == RankValue::finite(0));
    // the fixed stage of a dense/codense map captures every point
    SystemDescriptor cyl = build_system("cylinder");
    CHECK(point_rank(parse_map(cyl, "tail-map"), canonical_partition(cyl.space, 1),
                     cylinder_point(cyl.space, CylinderPoint{"01", false})) ==
          RankValue::infinite());
}

TEST_CASE("cantor-bendixson oracle") {
    SystemDescriptor dlo = build_system("dlo");
    CHECK(cb_point_rank(dlo.space, cut_point(dlo.space, CutPoint::at(Rat(5)))) ==
          RankValue::finite(0));
    CHECK(cb_point_rank(dlo.space, cut_point(dlo.space, CutPoint::above(Rat(0)))) ==
          RankValue::infinite());
    // no canonical atom isolates the cut above 0
    NamedPoint plus0 = cut_point(dlo.space, CutPoint::above(Rat(0)));
    for (int level = 1; level <= 6; ++level) {
        SymbolicSet atom = canonical_partition(dlo.space, level).atom_of(plus0);
        CHECK(atom.remove_point(plus0).witness().has_value());
    }
    auto acf = parse_space("compactification");
    CHECK(cb_point_rank(acf, compact_point(acf, CompactPoint::limit())) == RankValue::finite(1));
    CHECK(cb_point_rank(acf, compact_point(acf, CompactPoint::iso(3))) == RankValue::finite(0));
    auto cyl = parse_space("cylinder");
    CHECK(cb_point_rank(cyl, cylinder_point(cyl, CylinderPoint{"", false})) ==
          RankValue::infinite());
}

TEST_CASE("continuity detection") {
    SystemDescriptor dlo = build_system("dlo");
    CHECK(is_continuous(parse_map(dlo, "identity")));
    CHECK(is_continuous(parse_map(dlo, "shift-1")));
    CHECK_FALSE(is_continuous(parse_map(dlo, "stretch-limit")));
    SystemDescriptor acf = build_system("acf");
    CHECK(is_continuous(parse_map(acf, "swap-01")));
    CHECK(is_continuous(parse_map(acf, "collapse-0")));
    SystemDescriptor cyl = build_system("cylinder");
    CHECK_FALSE(is_continuous(parse_map(cyl, "tail-map")));
}

TEST_CASE("fragmentedness reports") {
    SystemDescriptor cyl = build_system("cylinder");
    FragmentedReport tail = is_fragmented_report(parse_map(cyl, "tail-map"));
    CHECK(tail.verdict == FragVerdict::NotFragmented);
    REQUIRE(tail.fixed.has_value());
    CHECK(*tail.fixed == SymbolicSet::whole(cyl.space));
    REQUIRE(tail.partition.has_value());
    CHECK(tail.partition->num_classes() == 2);  // the depth-1 separating partition
    CHECK(tail.iterations <= 2);
    CHECK(tail.beta == RankValue::infinite());

    SystemDescriptor mo2 = build_system("multiorder:2");
    FragmentedReport sl = is_fragmented_report(parse_map(mo2, "shift-limit"));
    CHECK(sl.verdict == FragVerdict::Fragmented);
    CHECK(sl.beta == RankValue::finite(2));

    SystemDescriptor dlo = build_system("dlo");
    FragmentedReport id = is_fragmented_report(parse_map(dlo, "identity"));
    CHECK(id.verdict == FragVerdict::Fragmented);
    CHECK(id.beta == RankValue::finite(0));
}

TEST_CASE("cap handling is explicit") {
    SystemDescriptor mo2 = build_system("multiorder:2");
    PiecewiseMap f = parse_map(mo2, "shift-limit");
    Partition p = canonical_partition(mo2.space, 1);
    DerivativeChain chain = iterate_derivative(SymbolicSet::whole(mo2.space), f, p, 1);
    CHECK(chain.termination == Termination::CapReached);
    CHECK(beta_of_pair(f, p, std::nullopt, 1) == RankValue::capped(1));
    NamedPoint corner = product_point(mo2.space, {CutPoint::minus_inf(), CutPoint::minus_inf()});
    CHECK(point_rank(f, p, corner, 1) == RankValue::capped(1));
}

TEST_CASE("oscillation directions") {
    SystemDescriptor dlo = build_system("dlo");
    PiecewiseMap f = parse_map(dlo, "stretch-limit");
    Partition p = canonical_partition(dlo.space, 1);
    NamedPoint plus0 = cut_point(dlo.space, CutPoint::above(Rat(0)));
    Directions d = oscillation_directions(f, p, plus0);
    CHECK(d.right);
    CHECK_FALSE(d.left);
    Directions none = oscillation_directions(parse_map(dlo, "identity"), p,
                                             cut_point(dlo.space, CutPoint::at(Rat(0))));
    CHECK_FALSE(none.any());
    SystemDescriptor cyc = build_system("cyclic");
    CHECK_THROWS_AS(oscillation_directions(parse_map(cyc, "identity"),
                                           canonical_partition(cyc.space, 1),
                                           cyclic_point(cyc.space, CyclicPoint{})),
                    std::invalid_argument);
}

TEST_CASE("cyclic collapse ranks") {
    SystemDescriptor cyc = build_system("cyclic");
    PiecewiseMap f = parse_map(cyc, "cyclic-collapse");
    // the two-atom level-1 partition cannot separate the two wrap cuts
    CHECK(beta_of_pair(f, canonical_partition(cyc.space, 1)) == RankValue::finite(0));
    SymbolicSet d2 = derivative(SymbolicSet::whole(cyc.space), f, canonical_partition(cyc.space, 2));
    CHECK(d2 == SymbolicSet::point(cyclic_point(cyc.space,
                                                CyclicPoint{CyclicPoint::Tag::Plus, Rat(0)})));
    BetaMapResult bm = beta_of_map(f, 4);
    CHECK(bm.rank == RankValue::finite(1));
    CHECK(bm.stabilized);
}
