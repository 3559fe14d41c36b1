#pragma once

#include "oscrank/engine.hpp"

namespace oscrank {

/// Equivariant continuous surjection between systems with its group map,
/// exact set image/preimage, and declared openness.
class FactorMap {
public:
    enum class Kind { Projection, Singleton, Glue };

    Kind kind = Kind::Singleton;
    SpacePtr source, target;
    bool is_open = true;
    int proj_keep = 0;  // Projection: number of leading coordinates kept

    NamedPoint map_point(const NamedPoint& x) const;
    GroupElement map_group(const GroupElement& g) const;
    SymbolicSet image(const SymbolicSet& s) const;
    SymbolicSet preimage(const SymbolicSet& s) const;
    Partition pullback(const Partition& p) const;
};

/// Coordinate projection multiorder:n -> multiorder:k (cut line when k = 1);
/// open, with the group map dropping trailing components.
FactorMap projection_factor(int n, int k);

/// Everything to the one-point space; open; pulled-back trivial partition is
/// the entourage X x X.
FactorMap singleton_factor(SpacePtr source);

/// Compactification quotient gluing Iso(0) to the limit point (indices shift
/// down by one). Continuous, surjective, and not open: the image of the clopen
/// {Iso(0)} is the non-open {limit}. The acting groups are trivial.
FactorMap glue_factor();

/// A synthetic Ellis candidate on the compactification that oscillates at the
/// limit point and transfers coherently through the gluing factor.
PiecewiseMap glue_split_map();

/// The unique map with transfer(f)(pi(x)) = pi(f(x)), built region-wise;
/// throws with the violating pair when f is incoherent over a fiber.
PiecewiseMap transfer_map(const FactorMap& fac, const PiecewiseMap& f);

struct FactorLemmaReport {
    struct AlphaRow {
        int alpha = 0;
        bool inclusion = false;  // upstairs stage inside pulled-back downstairs stage
        bool equality = false;
    };
    std::vector<AlphaRow> rows;
    bool inclusion_all = true;
    bool equality_all = true;
    RankValue rank_source, rank_target;
    std::optional<bool> rank_le;  // beta(f, pullback) <= beta(transfer, p)
    bool rank_eq = false;
};

/// Derived-set transfer along the factor: inclusion at every alpha, equality
/// when the factor is open, and the rank comparison for the restricted pair.
FactorLemmaReport check_factor_lemmas(const FactorMap& fac, const PiecewiseMap& f,
                                      const SymbolicSet& d, const Partition& p, int alpha_max,
                                      long long cap = 64);

}  // namespace oscrank
