#pragma once

#include <variant>
#include <vector>

#include "oscrank/set.hpp"

namespace oscrank {

/// A finite clopen partition of a space; stands in for the entourage
/// W_P = union of A x A over classes A. Structured kinds keep the class list
/// implicit so product partitions stay cheap; Flat stores classes explicitly.
class Partition {
public:
    struct LineCuts {
        std::vector<Rat> cuts;  // sorted unique; atoms 2k+1
        bool operator==(const LineCuts&) const = default;
    };
    struct ProductCuts {
        std::vector<LineCuts> factors;
        bool operator==(const ProductCuts&) const = default;
    };
    struct CompactLevel {
        std::vector<long long> singled;  // sorted iso indices split off; + cofinite rest
        bool operator==(const CompactLevel&) const = default;
    };
    struct CyclicCutsP {
        std::vector<Rat> cuts;  // sorted, within [0,1), nonempty; atoms 2k
        bool operator==(const CyclicCutsP&) const = default;
    };
    struct CylinderDepth {
        int depth = 1;  // atoms: words of this length
        bool operator==(const CylinderDepth&) const = default;
    };
    struct Flat {
        std::vector<SymbolicSet> classes;
        bool operator==(const Flat& o) const { return classes == o.classes; }
    };

    SpacePtr space;
    std::variant<LineCuts, ProductCuts, CompactLevel, CyclicCutsP, CylinderDepth, Flat> impl;

    long long num_classes() const;
    long long atom_index(const NamedPoint& x) const;
    SymbolicSet atom_set(long long idx) const;
    SymbolicSet atom_of(const NamedPoint& x) const { return atom_set(atom_index(x)); }
    bool separates(const NamedPoint& a, const NamedPoint& b) const {
        return atom_index(a) != atom_index(b);
    }

    /// Materializes every class; guarded against huge products.
    std::vector<SymbolicSet> classes() const;

    /// True iff every class of *this is contained in a class of `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& o) const {
        return same_space(space, o.space) && impl == o.impl;
    }
};

/// Cofinal entourage basis: line atoms from cut values p/q with |p|,q <= level;
/// product of those per coordinate; singled-out isolated points up to `level`;
/// circle cuts from the same value family; depth-`level` cylinders; singletons
/// on finite spaces. Level l+1 refines level l.
Partition canonical_partition(SpacePtr sp, int level);

/// The one-class partition (entourage X x X).
Partition trivial_partition(SpacePtr sp);

Partition flat_partition(SpacePtr sp, std::vector<SymbolicSet> classes);

/// Checks disjointness, covering, and clopenness of every class.
/// Structured kinds are valid by construction; Flat is verified class by class.
bool validate_partition(const Partition& p, std::string* why = nullptr);

}  // namespace oscrank
