#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oscrank/point.hpp"
#include "oscrank/rational.hpp"
#include "oscrank/space.hpp"

namespace oscrank {

// ---------------------------------------------------------------------------
// Interval algebra over a cut axis.
//
// A position is a cut coordinate sitting just below (side -1) or just above
// (side +1) a named point. A point x occupies the span [(x,-1),(x,+1)]; an
// interval is the set of points whose span lies between its two positions.
// Exclusion normalization: a bound excluded at a point with a named immediate
// neighbour is rewritten to the inclusive form at that neighbour, so equal
// point sets get equal representations.
// ---------------------------------------------------------------------------

template <typename PointT>
struct AxisPos {
    PointT p;
    int side = -1;  // -1 just below p, +1 just above p
};

template <typename PointT>
struct AxisInterval {
    AxisPos<PointT> lo;  // lower position, normalized
    AxisPos<PointT> hi;  // upper position, normalized
    bool operator==(const AxisInterval& o) const {
        return compare(lo.p, o.lo.p) == 0 && lo.side == o.lo.side &&
               compare(hi.p, o.hi.p) == 0 && hi.side == o.hi.side;
    }
};

using LineInterval = AxisInterval<CutPoint>;
using CycInterval = AxisInterval<CyclicPoint>;
using Box = std::vector<LineInterval>;

/// Normalized nonempty interval, or nullopt when the description is empty.
std::optional<LineInterval> make_line_interval(const CutPoint& lo, bool lo_inc,
                                               const CutPoint& hi, bool hi_inc);
std::optional<CycInterval> make_cyc_interval(const CyclicPoint& lo, bool lo_inc,
                                             const CyclicPoint& hi, bool hi_inc);

// Canonical payloads, one per space kind.

struct LineSet {
    std::vector<LineInterval> iv;  // sorted, disjoint, unmergeable
    bool operator==(const LineSet&) const = default;
};

struct ProductSet {
    std::vector<Box> boxes;  // canonical essential-grid cell list, sorted
    bool operator==(const ProductSet&) const = default;
};

struct CompactSet {
    bool cofinite = false;
    std::vector<long long> isos;  // members (finite) or exclusions (cofinite), sorted
    bool has_limit = false;
    bool operator==(const CompactSet&) const = default;
};

struct CyclicSet {
    std::vector<CycInterval> iv;  // sorted in representative order; wrapped arcs are two cells
    bool operator==(const CyclicSet&) const = default;
};

struct CylinderSet {
    std::vector<std::string> cyls;  // canonical antichain of words, sorted
    std::vector<CylinderPoint> pts;  // normalized, sorted, none inside cyls
    bool operator==(const CylinderSet& o) const;
};

struct FiniteSet {
    std::vector<int> members;  // sorted
    bool operator==(const FiniteSet&) const = default;
};

/// A set in the closed symbolic class of its space: finite union of interval
/// boxes / finite-or-cofinite sets / cylinder unions plus marked points.
/// Always held in canonical form; operator== decides point-set equality.
class SymbolicSet {
public:
    SymbolicSet() = default;

    static SymbolicSet empty(SpacePtr sp);
    static SymbolicSet whole(SpacePtr sp);
    static SymbolicSet point(const NamedPoint& x);
    static SymbolicSet line(SpacePtr sp, std::vector<LineInterval> iv);
    static SymbolicSet product(SpacePtr sp, std::vector<Box> boxes);
    static SymbolicSet compact(SpacePtr sp, CompactSet payload);
    static SymbolicSet cyclic(SpacePtr sp, std::vector<CycInterval> iv);
    static SymbolicSet cylinder_words(SpacePtr sp, std::vector<std::string> words);
    static SymbolicSet cylinder(SpacePtr sp, CylinderSet payload);
    static SymbolicSet finite(SpacePtr sp, std::vector<int> members);

    const SpacePtr& space() const { return space_; }

    bool member(const NamedPoint& x) const;
    bool is_empty() const;
    bool is_closed() const;
    bool is_clopen() const;
    /// True when the set is a finite collection of named points.
    bool is_finite_points() const;

    SymbolicSet unite(const SymbolicSet& o) const;
    SymbolicSet intersect(const SymbolicSet& o) const;
    SymbolicSet diff(const SymbolicSet& o) const;
    SymbolicSet complement() const;
    SymbolicSet closure() const;
    SymbolicSet remove_point(const NamedPoint& x) const;

    bool subset_of(const SymbolicSet& o) const { return intersect(o) == *this; }
    bool operator==(const SymbolicSet& o) const;
    bool operator!=(const SymbolicSet& o) const { return !(*this == o); }

    /// Deterministic named point of a nonempty set (least cell, least endpoint;
    /// open left ends pick the simplest rational inside).
    std::optional<NamedPoint> witness() const;

    /// All points of a finite-points set; throws otherwise.
    std::vector<NamedPoint> points() const;

    std::string str() const;

    const LineSet& as_line() const { return std::get<LineSet>(payload_); }
    const ProductSet& as_product() const { return std::get<ProductSet>(payload_); }
    const CompactSet& as_compact() const { return std::get<CompactSet>(payload_); }
    const CyclicSet& as_cyclic() const { return std::get<CyclicSet>(payload_); }
    const CylinderSet& as_cylinder() const { return std::get<CylinderSet>(payload_); }
    const FiniteSet& as_finite() const { return std::get<FiniteSet>(payload_); }

private:
    SpacePtr space_;
    std::variant<LineSet, ProductSet, CompactSet, CyclicSet, CylinderSet, FiniteSet> payload_;
};

/// Convenience: interval set on a cut line, empty description allowed.
SymbolicSet line_interval_set(SpacePtr sp, const CutPoint& lo, bool lo_inc,
                              const CutPoint& hi, bool hi_inc);

/// Canonical union of raw line intervals; shared with the partition code.
std::vector<LineInterval> canon_line(std::vector<LineInterval> iv);
std::vector<CycInterval> canon_cyc(std::vector<CycInterval> iv);

LineInterval closure_interval(const LineInterval& i);
CycInterval closure_interval(const CycInterval& i);
bool line_member(const CutPoint& x, const LineInterval& i);
bool cyc_member(const CyclicPoint& x, const CycInterval& i);

std::string to_string(const LineInterval& i);
std::string to_string(const CycInterval& i);

}  // namespace oscrank
