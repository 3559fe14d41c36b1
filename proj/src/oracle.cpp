#include "oscrank/oracle.hpp"

#include <map>

namespace oscrank {

OscillationReport witness_search(const PiecewiseMap& f, const Partition& p, const NamedPoint& x,
                                 const SymbolicSet& y, int height, int depth) {
    if (!y.member(x)) throw std::invalid_argument("witness_search: x is not in the ambient set");
    OscillationReport rep{x, height, {}};
    const auto& samples = named_samples(f.space(), height);
    for (int level = 1; level <= depth; ++level) {
        SymbolicSet atom = canonical_partition(f.space(), level).atom_of(x);
        LevelVerdict v;
        v.level = level;
        std::optional<long long> first_idx;
        std::optional<NamedPoint> first_pt;
        for (const auto& s : samples) {
            if (!atom.member(s) || !y.member(s)) continue;
            long long idx = p.atom_index(f.apply(s));
            if (!first_idx) {
                first_idx = idx;
                first_pt = s;
            } else if (idx != *first_idx) {
                v.witnessed = true;
                v.v1 = first_pt;
                v.v2 = s;
                break;
            }
        }
        rep.levels.push_back(std::move(v));
    }
    return rep;
}

ConsistencyReport consistency_check(const PiecewiseMap& f, const Partition& p,
                                    const SymbolicSet& y, int height, int depth) {
    ConsistencyReport rep;
    const auto& samples = named_samples(f.space(), height);
    SymbolicSet deriv = derivative(y, f, p);

    // image class of every sample, computed once
    std::vector<long long> img(samples.size());
    std::vector<bool> in_y(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        in_y[i] = y.member(samples[i]);
        img[i] = in_y[i] ? p.atom_index(f.apply(samples[i])) : -1;
    }

    // per level: do the samples in x's canonical atom hit >= 2 image classes?
    std::vector<std::vector<bool>> bucket_multi(depth);
    std::vector<std::vector<long long>> bucket_of(depth);
    for (int level = 1; level <= depth; ++level) {
        Partition atoms = canonical_partition(f.space(), level);
        std::map<long long, std::pair<long long, bool>> seen;  // bucket -> (first image, multi)
        std::vector<long long> bucket(samples.size(), -1);
        for (size_t i = 0; i < samples.size(); ++i) {
            if (!in_y[i]) continue;
            long long b = atoms.atom_index(samples[i]);
            bucket[i] = b;
            auto [it, inserted] = seen.try_emplace(b, std::make_pair(img[i], false));
            if (!inserted && it->second.first != img[i]) it->second.second = true;
        }
        std::vector<bool> multi(samples.size(), false);
        for (size_t i = 0; i < samples.size(); ++i)
            if (bucket[i] >= 0) multi[i] = seen[bucket[i]].second;
        bucket_multi[level - 1] = std::move(multi);
        bucket_of[level - 1] = std::move(bucket);
    }

    for (size_t i = 0; i < samples.size(); ++i) {
        if (!in_y[i]) continue;
        ++rep.points_checked;
        bool in_deriv = deriv.member(samples[i]);
        bool all_levels = true, some_missing = false;
        for (int level = 1; level <= depth; ++level) {
            if (!bucket_multi[level - 1][i]) {
                all_levels = false;
                some_missing = true;
            }
        }
        if (in_deriv) {
            if (!all_levels) {
                ++rep.hard_failures;
                if (rep.failures.size() < 32)
                    rep.failures.push_back("no witness pair for " + to_string(samples[i]) +
                                           " in derivative (map " + f.name() + ")");
            }
        } else {
            if (some_missing) ++rep.confirmed_negative;
            else ++rep.unknowns;
        }
    }
    return rep;
}

SymbolicSet finite_bruteforce_derivative(const SymbolicSet& y, const PiecewiseMap& f,
                                         const Partition& p) {
    if (f.space()->kind != SpaceKind::Finite)
        throw std::invalid_argument("finite_bruteforce_derivative: finite spaces only");
    if (!same_space(y.space(), f.space()) || !same_space(p.space, f.space()))
        throw std::invalid_argument("finite_bruteforce_derivative: space mismatch");
    std::vector<int> osc;
    for (const auto& pt : y.points()) {
        // minimal relative neighbourhood of a discrete point is {pt}
        std::vector<NamedPoint> nbhd = {pt};
        bool separated = false;
        for (const auto& v1 : nbhd)
            for (const auto& v2 : nbhd)
                if (p.separates(f.apply(v1), f.apply(v2))) separated = true;
        if (separated) osc.push_back(pt.finite().idx);
    }
    return SymbolicSet::finite(f.space(), std::move(osc));
}

void annotate_chain(DerivativeChain& chain, const PiecewiseMap& f, const Partition& p, int height,
                    int depth) {
    chain.certificates.clear();
    for (size_t k = 1; k < chain.stages.size(); ++k) {
        if (chain.stages[k].is_empty()) break;
        auto w = chain.stages[k].witness();
        if (!w) break;
        OscillationReport rep = witness_search(f, p, *w, chain.stages[k - 1], height, depth);
        StageCertificate cert;
        cert.point = *w;
        for (const auto& lv : rep.levels) {
            cert.level = lv.level;
            cert.witnessed = lv.witnessed;
            cert.v1 = lv.v1;
            cert.v2 = lv.v2;
            if (lv.witnessed) break;
        }
        chain.certificates.push_back(std::move(cert));
    }
}

}  // namespace oscrank
