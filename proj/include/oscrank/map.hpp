#pragma once

#include <string>
#include <variant>

#include "oscrank/group.hpp"
#include "oscrank/set.hpp"

namespace oscrank {

struct Constant {
    NamedPoint value;
};
struct ApplyElem {
    GroupElement g;
};
/// f(x) = c0 on the eventually-zero points, c1 elsewhere; both fibers are
/// dense in every cylinder, so this is the canonical non-fragmented action.
/// Only allowed as the single piece of a cylinder-space map.
struct DenseCodense {
    NamedPoint c0, c1;
};
using Action = std::variant<Constant, ApplyElem, DenseCodense>;

struct Piece {
    SymbolicSet region;  // locally closed by construction
    Action action;
};

/// A total self-map given by finitely many disjoint regions covering the
/// space, each carrying a constant or homeomorphism action.
class PiecewiseMap {
public:
    static PiecewiseMap make(SpacePtr sp, std::vector<Piece> pieces, std::string name,
                             bool claimed_in_ellis = false, std::string ellis_witness = "");

    const SpacePtr& space() const { return space_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::string& name() const { return name_; }
    const std::string& ellis_witness() const { return ellis_witness_; }
    bool claimed_in_ellis() const { return claimed_; }

    NamedPoint apply(const NamedPoint& x) const;
    bool has_dense_codense() const;
    /// All pieces carry open regions and no dense/codense action; such maps
    /// are continuous (each piece acts by a continuous function on an open set).
    bool all_pieces_open() const;

private:
    SpacePtr space_;
    std::vector<Piece> pieces_;
    std::string name_;
    std::string ellis_witness_;
    bool claimed_ = false;
};

PiecewiseMap identity_map(SpacePtr sp);
PiecewiseMap map_from_element(GroupElement g, std::string name, bool claimed_in_ellis = true,
                              std::string ellis_witness = "");

/// Exact preimage of a clopen set. Dense/codense pieces are rejected: their
/// fibers leave the symbolic class (the engine owns that case).
SymbolicSet preimage_clopen(const PiecewiseMap& f, const SymbolicSet& a);

/// (f o h^-1, h o f o h^-1); regions move by h, actions are conjugated.
std::pair<PiecewiseMap, PiecewiseMap> conjugate(const GroupElement& h, const PiecewiseMap& f);

/// Order preservation on the cut line, checked on all named samples up to
/// `height` together with the piece-region endpoints.
bool is_monotone(const PiecewiseMap& f, int height = 4);

/// Cyclic-order preservation (or collapse) on sampled triples.
bool preserves_cyclic(const PiecewiseMap& f, int height = 3);

/// C*(a,b,c) on the cyclic space via representative order.
bool cyclic_order(const CyclicPoint& a, const CyclicPoint& b, const CyclicPoint& c);

}  // namespace oscrank
