#include <doctest.h>

#include "oscrank/catalog.hpp"
#include "oscrank/oracle.hpp"

using namespace oscrank;

TEST_CASE("witness search finds oscillation pairs") {
    SystemDescriptor dlo = build_system("dlo");
    PiecewiseMap f = parse_map(dlo, "stretch-limit");
    Partition p = canonical_partition(dlo.space, 1);
    NamedPoint plus0 = cut_point(dlo.space, CutPoint::above(Rat(0)));
    OscillationReport rep = witness_search(f, p, plus0, SymbolicSet::whole(dlo.space), 4, 3);
    CHECK(rep.witnessed_everywhere());
    for (const auto& lv : rep.levels) {
        REQUIRE(lv.witnessed);
        // re-check the certificate: both inside the atom, images separated
        SymbolicSet atom = canonical_partition(dlo.space, lv.level).atom_of(plus0);
        CHECK(atom.member(*lv.v1));
        CHECK(atom.member(*lv.v2));
        CHECK(p.separates(f.apply(*lv.v1), f.apply(*lv.v2)));
    }
    // the identity never oscillates
    OscillationReport none = witness_search(parse_map(dlo, "identity"), p, plus0,
                                            SymbolicSet::whole(dlo.space), 4, 3);
    for (const auto& lv : none.levels) CHECK_FALSE(lv.witnessed);
    CHECK_THROWS_AS(witness_search(f, p, plus0, SymbolicSet::empty(dlo.space), 4, 3),
                    std::invalid_argument);
}

TEST_CASE("witness search at a corner of the product") {
    SystemDescriptor mo2 = build_system("multiorder:2");
    PiecewiseMap f = parse_map(mo2, "shift-limit");
    Partition p = canonical_partition(mo2.space, 1);
    NamedPoint x = product_point(mo2.space, {CutPoint::minus_inf(), CutPoint::at(Rat(0))});
    OscillationReport rep = witness_search(f, p, x, SymbolicSet::whole(mo2.space), 3, 3);
    CHECK(rep.witnessed_everywhere());
}

TEST_CASE("consistency harness on catalog slices") {
    SystemDescriptor dlo = build_system("dlo");
    for (const auto& f : dlo.all_maps()) {
        ConsistencyReport rep = consistency_check(f, canonical_partition(dlo.space, 2),
                                                  SymbolicSet::whole(dlo.space), 4, 3);
        CHECK(rep.hard_failures == 0);
        CHECK(rep.points_checked > 0);
    }
    // restricted ambient set
    SymbolicSet right = line_interval_set(dlo.space, CutPoint::at(Rat(0)), true,
                                          CutPoint::plus_inf(), true);
    ConsistencyReport rep = consistency_check(parse_map(dlo, "stretch-limit"),
                                              canonical_partition(dlo.space, 2), right, 4, 3);
    CHECK(rep.hard_failures == 0);
}

TEST_CASE("finite systems agree with the brute force exactly") {
    SystemDescriptor z4 = builtin_z4_system();
    Partition p = canonical_partition(z4.space, 1);
    for (const auto& f : z4.all_maps()) {
        SymbolicSet whole = SymbolicSet::whole(z4.space);
        CHECK(derivative(whole, f, p) == finite_bruteforce_derivative(whole, f, p));
        CHECK(derivative(whole, f, p).is_empty());
        ConsistencyReport rep = consistency_check(f, p, whole, 2, 2);
        CHECK(rep.hard_failures == 0);
        CHECK(rep.unknowns == 0);  // finite exhaustion leaves nothing open
    }
}

TEST_CASE("chain annotation produces re-checkable certificates") {
    SystemDescriptor mo2 = build_system("multiorder:2");
    PiecewiseMap f = parse_map(mo2, "shift-limit");
    Partition p = canonical_partition(mo2.space, 1);
    DerivativeChain chain = iterate_derivative(SymbolicSet::whole(mo2.space), f, p);
    annotate_chain(chain, f, p, 4, 2);
    REQUIRE(chain.certificates.size() == chain.stages.size() - 2);
    for (size_t k = 0; k < chain.certificates.size(); ++k) {
        const auto& cert = chain.certificates[k];
        CHECK(cert.witnessed);
        CHECK(chain.stages[k + 1].member(cert.point));
        REQUIRE(cert.v1.has_value());
        REQUIRE(cert.v2.has_value());
        CHECK(chain.stages[k].member(*cert.v1));
        CHECK(chain.stages[k].member(*cert.v2));
        CHECK(p.separates(f.apply(*cert.v1), f.apply(*cert.v2)));
    }
}
