#pragma once

#include <functional>

#include "oscrank/engine.hpp"

namespace oscrank {

struct CatalogEntry {
    PiecewiseMap map;
    std::optional<RankValue> expected_beta;  // closed form, when known
    std::string note;
    // approximating net for claimed limit maps that are not group elements
    std::function<GroupElement(long long)> net;
};

struct SystemDescriptor {
    std::string spec;
    SpacePtr space;
    std::vector<CatalogEntry> entries;       // always contains the identity
    std::vector<GroupElement> homeos;        // catalog group elements (conjugators)
    std::optional<RankValue> expected_system_beta;
    std::string cb_oracle;

    std::vector<PiecewiseMap> all_maps() const;
    std::vector<PiecewiseMap> claimed_maps() const;  // claimed Ellis elements only
    const CatalogEntry* find(const std::string& name) const;
};

/// "acf", "dlo", "cyclic", "multiorder:<n>", "cylinder", "finite:<path>".
SystemDescriptor build_system(const std::string& spec);

/// JSON: {"points": [names], "generators": [[cycle],...], "maps": {name: {point: point}}}.
/// Strict schema; unknown keys, non-bijective generators and partial tables
/// are rejected. The Ellis semigroup of a finite discrete system is the
/// generated permutation group, computed by closure.
SystemDescriptor load_finite_system(const std::string& path);

std::vector<FinitePermutation> finite_ellis_closure(const std::vector<FinitePermutation>& gens);

/// Catalog map by name, or an ad hoc "plauto:(x,y)(x,y)..." / "perm:(a b c)(d e)".
PiecewiseMap parse_map(const SystemDescriptor& sys, const std::string& name);

/// Grid of shipped systems for the law suites.
std::vector<std::string> default_grid_specs(bool full);

/// Finite-stage check that the recorded net converges to the map: for every
/// named sample and level, the tail of the net lands in the level atom of the
/// limit value.
bool verify_net_limit(const CatalogEntry& entry, int max_level = 4, int height = 4,
                      long long steps = 64, std::string* why = nullptr);

/// Small built-in rotation system used by the law suites (no file needed).
SystemDescriptor builtin_z4_system();

}  // namespace oscrank
