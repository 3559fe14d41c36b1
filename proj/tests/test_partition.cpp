#include <doctest.h>

#include "oscrank/partition.hpp"
#include "oscrank/samples.hpp"

using namespace oscrank;

namespace {
SpacePtr line() { return parse_space("cutline"); }

void check_partition_laws(const Partition& p, int sample_height) {
    auto classes = p.classes();
    SymbolicSet acc = SymbolicSet::empty(p.space);
    for (size_t i = 0; i < classes.size(); ++i) {
        CHECK_FALSE(classes[i].is_empty());
        CHECK(classes[i].is_clopen());
        for (size_t j = i + 1; j < classes.size(); ++j)
            CHECK(classes[i].intersect(classes[j]).is_empty());
        acc = acc.unite(classes[i]);
        CHECK(classes[i].witness().has_value());  // density of named points
    }
    CHECK(acc == SymbolicSet::whole(p.space));
    for (const auto& x : named_samples(p.space, sample_height)) {
        long long idx = p.atom_index(x);
        CHECK(p.atom_set(idx).member(x));
        CHECK(classes[idx].member(x));
    }
}
}  // namespace

TEST_CASE("canonical line level 1 has exactly the seven forced atoms") {
    // cut values at level 1 by brute force: |p| <= 1, q <= 1
    std::vector<Rat> cuts;
    for (long long pnum = -1; pnum <= 1; ++pnum) cuts.emplace_back(pnum, 1);
    Partition p = canonical_partition(line(), 1);
    REQUIRE(p.num_classes() == 2 * static_cast<long long>(cuts.size()) + 1);
    auto mk = [&](const CutPoint& a, const CutPoint& b) {
        return line_interval_set(line(), a, true, b, true);
    };
    std::vector<SymbolicSet> expected = {
        mk(CutPoint::minus_inf(), CutPoint::below(Rat(-1))),
        mk(CutPoint::at(Rat(-1)), CutPoint::at(Rat(-1))),
        mk(CutPoint::above(Rat(-1)), CutPoint::below(Rat(0))),
        mk(CutPoint::at(Rat(0)), CutPoint::at(Rat(0))),
        mk(CutPoint::above(Rat(0)), CutPoint::below(Rat(1))),
        mk(CutPoint::at(Rat(1)), CutPoint::at(Rat(1))),
        mk(CutPoint::above(Rat(1)), CutPoint::plus_inf()),
    };
    auto classes = p.classes();
    REQUIRE(classes.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) CHECK(classes[i] == expected[i]);
    check_partition_laws(p, 6);
}

TEST_CASE("canonical compactification atoms") {
    auto sp = parse_space("compactification");
    Partition p = canonical_partition(sp, 3);
    REQUIRE(p.num_classes() == 5);  // {0},{1},{2},{3}, rest+limit
    for (long long k = 0; k <= 3; ++k)
        CHECK(p.atom_set(k) == SymbolicSet::point(compact_point(sp, CompactPoint::iso(k))));
    SymbolicSet rest = p.atom_set(4);
    CHECK(rest.member(compact_point(sp, CompactPoint::limit())));
    CHECK(rest.member(compact_point(sp, CompactPoint::iso(9))));
    check_partition_laws(p, 5);
}

TEST_CASE("canonical cyclic atoms") {
    auto sp = parse_space("cyclic");
    Partition p1 = canonical_partition(sp, 1);
    REQUIRE(p1.num_classes() == 2);  // {0} and the full arc
    CHECK(p1.atom_set(0) ==
          SymbolicSet::point(cyclic_point(sp, CyclicPoint{CyclicPoint::Tag::Rat, Rat(0)})));
    check_partition_laws(p1, 4);
    Partition p2 = canonical_partition(sp, 2);
    REQUIRE(p2.num_classes() == 4);  // cuts {0, 1/2}
    check_partition_laws(p2, 4);
    CHECK(p2.refines(p1));
}

TEST_CASE("canonical product and cylinder atoms") {
    auto prod = parse_space("multiorder:2");
    Partition p = canonical_partition(prod, 1);
    CHECK(p.num_classes() == 49);
    check_partition_laws(p, 2);
    auto cyl = parse_space("cylinder");
    Partition c = canonical_partition(cyl, 2);
    CHECK(c.num_classes() == 4);
    check_partition_laws(c, 3);
}

TEST_CASE("refinement of canonical levels") {
    Partition p1 = canonical_partition(line(), 1);
    Partition p2 = canonical_partition(line(), 2);
    CHECK(p1.refines(p1));
    CHECK(p2.refines(p1));
    CHECK_FALSE(p1.refines(p2));
    // exhibit a level-1 atom meeting two level-2 atoms
    bool found = false;
    for (const auto& a : p1.classes()) {
        int met = 0;
        for (const auto& b : p2.classes())
            if (!a.intersect(b).is_empty()) ++met;
        if (met >= 2) found = true;
    }
    CHECK(found);
    auto prod = parse_space("multiorder:2");
    CHECK(canonical_partition(prod, 2).refines(canonical_partition(prod, 1)));
    CHECK_FALSE(canonical_partition(prod, 1).refines(canonical_partition(prod, 2)));
    auto cp = parse_space("compactification");
    CHECK(canonical_partition(cp, 4).refines(canonical_partition(cp, 2)));
    CHECK_FALSE(canonical_partition(cp, 2).refines(canonical_partition(cp, 4)));
}

TEST_CASE("partition entourage is transitive on samples") {
    for (const std::string& spec : {"cutline", "compactification", "cyclic"}) {
        auto sp = parse_space(spec);
        Partition p = canonical_partition(sp, 2);
        auto pts = named_samples(sp, 3);
        for (const auto& x : pts)
            for (const auto& y : pts)
                for (const auto& z : pts) {
                    if (!p.separates(x, y) && !p.separates(y, z)) CHECK_FALSE(p.separates(x, z));
                }
    }
}

TEST_CASE("flat partitions validate") {
    auto sp = parse_space("cutline");
    SymbolicSet left = line_interval_set(sp, CutPoint::minus_inf(), true, CutPoint::below(Rat(0)), true);
    SymbolicSet right = line_interval_set(sp, CutPoint::at(Rat(0)), true, CutPoint::plus_inf(), true);
    Partition good = flat_partition(sp, {left, right});
    std::string why;
    CHECK(validate_partition(good, &why));
    Partition overlap = flat_partition(sp, {left, SymbolicSet::whole(sp)});
    CHECK_FALSE(validate_partition(overlap, &why));
    Partition gap = flat_partition(sp, {left});
    CHECK_FALSE(validate_partition(gap, &why));
    // non-clopen class
    SymbolicSet closed_not_open =
        line_interval_set(sp, CutPoint::below(Rat(0)), true, CutPoint::plus_inf(), true);
    Partition bad = flat_partition(
        sp, {closed_not_open, closed_not_open.complement()});
    CHECK_FALSE(validate_partition(bad, &why));
    CHECK_THROWS_AS(flat_partition(sp, {}), std::invalid_argument);
}

TEST_CASE("trivial partition and level errors") {
    auto sp = parse_space("cyclic");
    Partition t = trivial_partition(sp);
    CHECK(t.num_classes() == 1);
    CHECK(t.atom_set(0) == SymbolicSet::whole(sp));
    CHECK_THROWS_AS(canonical_partition(sp, 0), std::invalid_argument);
}
