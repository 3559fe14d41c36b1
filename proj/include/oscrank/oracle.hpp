#pragma once

#include "oscrank/engine.hpp"
#include "oscrank/samples.hpp"

namespace oscrank {

/// Witness search outcome at one neighbourhood level.
struct LevelVerdict {
    int level = 0;
    bool witnessed = false;
    std::optional<NamedPoint> v1, v2;  // images land in distinct classes of the partition
};

struct OscillationReport {
    NamedPoint point;
    int height = 0;
    std::vector<LevelVerdict> levels;  // levels 1..depth

    bool witnessed_everywhere() const {
        for (const auto& l : levels)
            if (!l.witnessed) return false;
        return !levels.empty();
    }
};

/// Definition-level witness search: for each level <= depth, scan the named
/// points of height <= height inside the canonical level atom of x (cut with
/// y) for a pair whose f-images are separated by p. Deterministic order.
OscillationReport witness_search(const PiecewiseMap& f, const Partition& p, const NamedPoint& x,
                                 const SymbolicSet& y, int height, int depth);

struct ConsistencyReport {
    long long points_checked = 0;
    long long hard_failures = 0;       // in the derivative but no witness at some level
    long long confirmed_negative = 0;  // outside, and some level has no witness pair
    long long unknowns = 0;            // outside, witnesses at every sampled level
    std::vector<std::string> failures;

    bool ok() const { return hard_failures == 0; }
};

/// Soundness harness: named points inside derivative(y,f,p) must admit
/// witnesses at every level <= depth (density makes the positive direction
/// complete); points outside are confirmed or left unknown, never failed.
ConsistencyReport consistency_check(const PiecewiseMap& f, const Partition& p,
                                    const SymbolicSet& y, int height, int depth);

/// Literal definition on a finite discrete space: a point oscillates iff its
/// minimal relative neighbourhood {y} contains a separated image pair, which
/// never happens; the loop is kept definitional rather than shortcut.
SymbolicSet finite_bruteforce_derivative(const SymbolicSet& y, const PiecewiseMap& f,
                                         const Partition& p);

/// Attach an oscillation certificate to every successor stage of a chain.
void annotate_chain(DerivativeChain& chain, const PiecewiseMap& f, const Partition& p,
                    int height = 8, int depth = 3);

}  // namespace oscrank
