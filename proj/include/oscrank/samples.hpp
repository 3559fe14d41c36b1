#pragma once

#include <vector>

#include "oscrank/point.hpp"

namespace oscrank {

/// Deterministic enumeration of named points of height <= height, ordered by
/// height first and canonical point order within a height. Heights:
/// max(|p|,q) for rationals carried by cut tags, the iso index on the
/// compactification, the word length on the cylinder space, max over
/// coordinates on products. Infinities and the limit point come first.
/// The result is cached per (space, height) and shared.
const std::vector<NamedPoint>& named_samples(const SpacePtr& sp, int height);

/// All named cut-line points of height <= height, in order.
std::vector<CutPoint> cut_samples(int height);

std::vector<CyclicPoint> cyclic_samples(int height);

}  // namespace oscrank
