#include "oscrank/samples.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <stdexcept>

namespace oscrank {

std::vector<CutPoint> cut_samples(int height) {
    std::vector<CutPoint> out;
    out.push_back(CutPoint::minus_inf());
    for (const Rat& q : level_cut_values(height)) {
        out.push_back(CutPoint::below(q));
        out.push_back(CutPoint::at(q));
        out.push_back(CutPoint::above(q));
    }
    out.push_back(CutPoint::plus_inf());
    return out;
}

std::vector<CyclicPoint> cyclic_samples(int height) {
    std::vector<CyclicPoint> out;
    for (const Rat& q : level_cut_values(height)) {
        if (q < Rat(0) || q >= Rat(1)) continue;
        out.push_back(CyclicPoint{CyclicPoint::Tag::Minus, q});
        out.push_back(CyclicPoint{CyclicPoint::Tag::Rat, q});
        out.push_back(CyclicPoint{CyclicPoint::Tag::Plus, q});
    }
    std::sort(out.begin(), out.end(),
              [](const CyclicPoint& a, const CyclicPoint& b) { return compare(a, b) < 0; });
    return out;
}

namespace {

// enumeration height of a point: rational height under the cut tags, the iso
// index, the word length; infinities and the limit come first
BigInt point_height(const NamedPoint& p) {
    return std::visit(
        [&](const auto& v) -> BigInt {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CutPoint>) {
                return v.is_inf() ? BigInt(0) : v.q.height();
            } else if constexpr (std::is_same_v<T, std::vector<CutPoint>>) {
                BigInt h = 0;
                for (const auto& c : v)
                    if (!c.is_inf() && c.q.height() > h) h = c.q.height();
                return h;
            } else if constexpr (std::is_same_v<T, CompactPoint>) {
                return v.is_limit ? BigInt(0) : BigInt(v.k);
            } else if constexpr (std::is_same_v<T, CyclicPoint>) {
                return v.q.height();
            } else if constexpr (std::is_same_v<T, CylinderPoint>) {
                return BigInt(v.normalized().word.size());
            } else {
                return BigInt(v.idx);
            }
        },
        p.value);
}

// height-major, then canonical point order: the deterministic scan order of
// the witness searches; heights are precomputed once
void sort_samples(std::vector<NamedPoint>& pts) {
    std::vector<size_t> idx(pts.size());
    std::vector<long long> h(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        idx[i] = i;
        h[i] = static_cast<long long>(point_height(pts[i]));
    }
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        if (h[a] != h[b]) return h[a] < h[b];
        return compare(pts[a], pts[b]) < 0;
    });
    std::vector<NamedPoint> out;
    out.reserve(pts.size());
    for (size_t i : idx) out.push_back(std::move(pts[i]));
    pts = std::move(out);
}

}  // namespace

namespace {
std::vector<NamedPoint> build_samples(const SpacePtr& sp, int height) {
    std::vector<NamedPoint> out;
    switch (sp->kind) {
        case SpaceKind::CutLine:
            for (const auto& p : cut_samples(height)) out.push_back(cut_point(sp, p));
            break;
        case SpaceKind::Product: {
            auto line = cut_samples(height);
            std::vector<size_t> idx(sp->arity, 0);
            while (true) {
                std::vector<CutPoint> coords;
                for (int i = 0; i < sp->arity; ++i) coords.push_back(line[idx[i]]);
                out.push_back(product_point(sp, std::move(coords)));
                int i = sp->arity - 1;
                while (i >= 0 && ++idx[i] == line.size()) idx[i--] = 0;
                if (i < 0) break;
            }
            break;
        }
        case SpaceKind::Compact:
            for (long long k = 0; k <= height; ++k)
                out.push_back(compact_point(sp, CompactPoint::iso(k)));
            out.push_back(compact_point(sp, CompactPoint::limit()));
            break;
        case SpaceKind::Cyclic:
            for (const auto& p : cyclic_samples(height)) out.push_back(cyclic_point(sp, p));
            break;
        case SpaceKind::Cylinder: {
            // words of length <= height, both tails, normalized and deduplicated
            std::vector<std::string> words = {""};
            for (int len = 1; len <= height; ++len) {
                size_t start = words.size() - (1ULL << (len - 1));
                std::vector<std::string> next;
                for (size_t i = start; i < words.size(); ++i) {
                    next.push_back(words[i] + "0");
                    next.push_back(words[i] + "1");
                }
                words.insert(words.end(), next.begin(), next.end());
            }
            for (const auto& w : words) {
                out.push_back(cylinder_point(sp, CylinderPoint{w, false}));
                out.push_back(cylinder_point(sp, CylinderPoint{w, true}));
            }
            std::sort(out.begin(), out.end(),
                      [](const NamedPoint& a, const NamedPoint& b) { return compare(a, b) < 0; });
            out.erase(std::unique(out.begin(), out.end(),
                                  [](const NamedPoint& a, const NamedPoint& b) {
                                      return compare(a, b) == 0;
                                  }),
                      out.end());
            break;
        }
        case SpaceKind::Finite:
            for (size_t i = 0; i < sp->point_names.size(); ++i)
                out.push_back(finite_point(sp, static_cast<int>(i)));
            break;
    }
    sort_samples(out);
    return out;
}
}  // namespace

const std::vector<NamedPoint>& named_samples(const SpacePtr& sp, int height) {
    if (height < 1) throw std::invalid_argument("named_samples: height must be >= 1");
    struct Key {
        std::string spec;
        int arity;
        int height;
        bool operator<(const Key& o) const {
            return std::tie(spec, arity, height) < std::tie(o.spec, o.arity, o.height);
        }
    };
    static std::map<Key, std::vector<NamedPoint>> cache;
    Key key{sp->spec, sp->arity, height};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_samples(sp, height)).first;
    return it->second;
}

}  // namespace oscrank
