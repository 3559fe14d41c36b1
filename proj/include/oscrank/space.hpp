#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscrank/rational.hpp"

namespace oscrank {

// Every shipped space is a second-countable Stone space (weight aleph-0):
// the canonical clopen partitions below form a countable basis.
enum class SpaceKind {
    CutLine,   // cuts of the rationals plus two ends
    Product,   // finite product of cut lines
    Compact,   // one-point compactification of a countable discrete set
    Cyclic,    // cuts of the dense cyclic order, representatives in [0,1)
    Cylinder,  // {0,1}^N with eventually-constant sequences as named points
    Finite,    // finite discrete space with listed points
};

struct Space {
    SpaceKind kind = SpaceKind::CutLine;
    int arity = 1;                         // Product only
    std::vector<std::string> point_names;  // Finite only
    std::string spec;                      // the spec string this was parsed from

    bool operator==(const Space& o) const {
        return kind == o.kind && arity == o.arity && point_names == o.point_names;
    }
};

using SpacePtr = std::shared_ptr<const Space>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// "cutline", "multiorder:<n>", "compactification", "cyclic", "cylinder", "point".
SpacePtr parse_space(const std::string& spec);

SpacePtr make_finite_space(std::vector<std::string> names, const std::string& spec);

/// One-point target space used by the singleton factor.
SpacePtr point_space();

}  // namespace oscrank
