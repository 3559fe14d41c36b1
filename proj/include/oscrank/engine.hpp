#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscrank/map.hpp"
#include "oscrank/partition.hpp"

namespace oscrank {

/// Finite(n), Infinite, or Capped(steps) when iteration hit the step cap
/// before deciding. Capped propagates through suprema and never silently
/// downgrades to a finite value.
struct RankValue {
    enum class Kind { Finite, Infinite, Capped };
    Kind kind = Kind::Finite;
    long long n = 0;

    static RankValue finite(long long v) { return {Kind::Finite, v}; }
    static RankValue infinite() { return {Kind::Infinite, 0}; }
    static RankValue capped(long long steps) { return {Kind::Capped, steps}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_infinite() const { return kind == Kind::Infinite; }
    bool is_capped() const { return kind == Kind::Capped; }

    bool operator==(const RankValue& o) const { return kind == o.kind && (kind != Kind::Finite || n == o.n) && (kind != Kind::Capped || n == o.n); }
    bool operator!=(const RankValue& o) const { return !(*this == o); }

    /// Partial order: nullopt when a Capped value is involved.
    static std::optional<bool> le(const RankValue& a, const RankValue& b);

    /// sup of a list; empty list = Finite(0); Capped poisons the result.
    static RankValue sup(const std::vector<RankValue>& xs);

    std::string str() const;
};

enum class Termination { Empty, FixedPoint, CapReached };

/// An oscillation certificate attached to a chain stage (filled by the oracle).
struct StageCertificate {
    NamedPoint point;
    int level = 0;
    bool witnessed = false;
    std::optional<NamedPoint> v1, v2;
};

/// Stages Y = Y0 ⊇ Y1 ⊇ ..., strictly decreasing until termination.
/// A FixedPoint chain ends at the nonempty stage equal to its own derivative.
struct DerivativeChain {
    std::vector<SymbolicSet> stages;
    Termination termination = Termination::Empty;
    std::vector<StageCertificate> certificates;

    RankValue rank(long long cap) const;
};

/// The oscillation derivative of a closed set: the points of Y where f mixes
/// at least two partition classes in every relative neighbourhood. Computed
/// by the boundary identity
///     Y' = union over atoms A of  cl(Y ∩ f^-1[A]) \ (Y ∩ f^-1[A]),
/// which equals the pairwise form  union_{A≠B} cl(S_A) ∩ cl(S_B)  because the
/// S_A partition Y; evaluated piece by piece so product partitions need no
/// atom enumeration.
SymbolicSet derivative(const SymbolicSet& y, const PiecewiseMap& f, const Partition& p);

/// Literal pairwise-closure formula; enumerates classes, for cross-checks.
SymbolicSet derivative_pairwise(const SymbolicSet& y, const PiecewiseMap& f, const Partition& p);

DerivativeChain iterate_derivative(const SymbolicSet& y, const PiecewiseMap& f,
                                   const Partition& p, long long cap = 64);

RankValue beta_of_pair(const PiecewiseMap& f, const Partition& p,
                       const std::optional<SymbolicSet>& y = std::nullopt, long long cap = 64);

struct BetaMapResult {
    RankValue rank;
    bool stabilized = false;
    std::vector<RankValue> per_level;  // levels 1..max_level
};

/// sup of beta_of_pair over canonical levels 1..max_level; a certified lower
/// bound for the rank over the full uniformity, exact on the catalog.
BetaMapResult beta_of_map(const PiecewiseMap& f, int max_level, long long cap = 64);

/// sup over the supplied map list; the list must contain the identity.
RankValue beta_of_system(const std::vector<PiecewiseMap>& maps, int max_level, long long cap = 64);

RankValue point_rank(const PiecewiseMap& f, const Partition& p, const NamedPoint& x,
                     long long cap = 64);
RankValue point_rank_in_chain(const DerivativeChain& chain, const NamedPoint& x, long long cap = 64);

/// Cantor-Bendixson rank oracle for the shipped spaces.
RankValue cb_point_rank(const SpacePtr& sp, const NamedPoint& x);

/// Exact for catalog maps: empty derivatives at all levels <= level_bound
/// plus the structural certificate (all pieces open, no dense/codense action).
bool is_continuous(const PiecewiseMap& f, int level_bound = 3);

enum class FragVerdict { Fragmented, NotFragmented, Indeterminate };

struct FragmentedReport {
    FragVerdict verdict = FragVerdict::Fragmented;
    RankValue beta;                      // rank when fragmented; Capped when indeterminate
    std::optional<SymbolicSet> fixed;    // nonempty D with D' = D, when not fragmented
    std::optional<Partition> partition;  // the witnessing partition
    long long iterations = 0;            // derivative calls spent on the witness chain
    bool stabilized = false;
};

FragmentedReport is_fragmented_report(const PiecewiseMap& f, long long cap = 64,
                                      int level_bound = 3);

struct Directions {
    bool left = false;
    bool right = false;
    bool any() const { return left || right; }
};

/// One-sided oscillation at x against the interval atom of f(x): the side is
/// present when x is a limit of points whose images land beyond that atom.
Directions oscillation_directions(const PiecewiseMap& f, const Partition& p, const NamedPoint& x);

/// { x : g(x) and h(x) lie in the same class of p }.
SymbolicSet equal_atom_locus(const GroupElement& g, const GroupElement& h, const Partition& p);

}  // namespace oscrank
