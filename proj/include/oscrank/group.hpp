#pragma once

#include <map>
#include <variant>

#include "oscrank/partition.hpp"
#include "oscrank/set.hpp"

namespace oscrank {

/// Piecewise-linear order-preserving bijection of the rationals. Affine with
/// rational slopes between breakpoints, identity-with-shift outside them.
/// No breakpoints = the identity.
class PLAuto {
public:
    PLAuto() = default;
    explicit PLAuto(std::vector<std::pair<Rat, Rat>> breaks);

    static PLAuto shift(const Rat& s) { return PLAuto({{Rat(0), s}}); }

    Rat eval(const Rat& x) const;
    CutPoint apply(const CutPoint& p) const;
    PLAuto inverse() const;
    /// g after h: x -> g(h(x)).
    static PLAuto compose(const PLAuto& g, const PLAuto& h);

    LineInterval image(const LineInterval& i) const;

    const std::vector<std::pair<Rat, Rat>>& breaks() const { return breaks_; }
    bool is_identity() const;
    bool operator==(const PLAuto& o) const { return breaks_ == o.breaks_; }

private:
    std::vector<std::pair<Rat, Rat>> breaks_;  // strictly increasing in both coords
};

/// Degree-one lift of an orientation-preserving PL circle homeomorphism.
/// Breakpoints have x in [0,1); the lift satisfies F(x+1) = F(x)+1.
class CyclicPLAuto {
public:
    CyclicPLAuto() : breaks_{{Rat(0), Rat(0)}} {}
    explicit CyclicPLAuto(std::vector<std::pair<Rat, Rat>> breaks);

    static CyclicPLAuto rotation(const Rat& by);

    Rat lift(const Rat& x) const;
    Rat eval(const Rat& x) const;  // representative in [0,1) -> representative
    CyclicPoint apply(const CyclicPoint& p) const;
    CyclicPLAuto inverse() const;
    static CyclicPLAuto compose(const CyclicPLAuto& g, const CyclicPLAuto& h);

    std::vector<CycInterval> image(const CycInterval& i) const;

    const std::vector<std::pair<Rat, Rat>>& breaks() const { return breaks_; }
    bool is_identity() const;
    bool operator==(const CyclicPLAuto& o) const { return breaks_ == o.breaks_; }

private:
    std::vector<std::pair<Rat, Rat>> breaks_;  // x in [0,1) strictly increasing, y strictly increasing, y_last < y_0 + 1
};

/// Finitely supported permutation of the isolated points; the limit is fixed.
class FinSuppPerm {
public:
    FinSuppPerm() = default;
    /// Disjoint cycles over iso indices.
    explicit FinSuppPerm(const std::vector<std::vector<long long>>& cycles);

    long long apply(long long k) const;
    CompactPoint apply(const CompactPoint& p) const;
    FinSuppPerm inverse() const;
    static FinSuppPerm compose(const FinSuppPerm& g, const FinSuppPerm& h);

    bool is_identity() const { return fwd_.empty(); }
    const std::map<long long, long long>& table() const { return fwd_; }
    bool operator==(const FinSuppPerm& o) const { return fwd_ == o.fwd_; }

private:
    std::map<long long, long long> fwd_;  // off-support points fixed
};

/// Permutation of a finite space's points (also used as map tables' group part).
class FinitePermutation {
public:
    FinitePermutation() = default;
    explicit FinitePermutation(std::vector<int> table);

    int apply(int idx) const { return table_.empty() ? idx : table_[idx]; }
    FinitePermutation inverse() const;
    static FinitePermutation compose(const FinitePermutation& g, const FinitePermutation& h);
    bool is_identity() const;
    const std::vector<int>& table() const { return table_; }
    bool operator==(const FinitePermutation& o) const { return table_ == o.table_; }

private:
    std::vector<int> table_;  // empty = identity
};

struct IdentityElem {
    bool operator==(const IdentityElem&) const { return true; }
};

struct ProductAuto {
    std::vector<PLAuto> comps;
    bool operator==(const ProductAuto&) const = default;
};

/// A homeomorphism of one of the shipped spaces.
class GroupElement {
public:
    SpacePtr space;
    std::variant<IdentityElem, PLAuto, ProductAuto, FinSuppPerm, CyclicPLAuto, FinitePermutation>
        impl;

    NamedPoint apply(const NamedPoint& x) const;
    GroupElement inverse() const;
    SymbolicSet image(const SymbolicSet& s) const;
    SymbolicSet preimage(const SymbolicSet& s) const { return inverse().image(s); }
    Partition push_partition(const Partition& p) const;
    bool is_identity() const;
    bool operator==(const GroupElement& o) const {
        return same_space(space, o.space) && impl == o.impl;
    }
    std::string str() const;
};

GroupElement identity_element(SpacePtr sp);
GroupElement pl_element(SpacePtr sp, PLAuto g);
GroupElement product_element(SpacePtr sp, std::vector<PLAuto> comps);
GroupElement perm_element(SpacePtr sp, FinSuppPerm g);
GroupElement cyclic_element(SpacePtr sp, CyclicPLAuto g);
GroupElement finite_perm_element(SpacePtr sp, FinitePermutation g);

/// g after h; both on the same space.
GroupElement compose(const GroupElement& g, const GroupElement& h);

}  // namespace oscrank
