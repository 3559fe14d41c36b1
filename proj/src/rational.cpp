#include "oscrank/rational.hpp"

#include <algorithm>

namespace oscrank {

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator must be positive");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

namespace {

// Simplest rational in the open interval (lo, hi), 0 <= lo, either bound may
// be absent (unbounded). Stern-Brocot descent on the integer parts.
Rat simplest_nonneg(const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    if (!lo) {
        // (-inf, hi) with hi > 0 handled by caller; here lo always present
        throw std::logic_error("simplest_nonneg: missing lower bound");
    }
    BigInt n = lo->floor();
    Rat next(BigInt(n + 1));
    if (!hi || *hi > next) return next;  // an integer fits
    // No integer inside: lo and hi share integer part n, answer is n + 1/t.
    Rat fl = *lo - Rat(n);
    Rat fh = *hi - Rat(n);
    std::optional<Rat> inv_hi;  // new upper bound: 1/fl, absent when fl == 0
    if (fl != Rat(0)) inv_hi = Rat(1) / fl;
    Rat t = simplest_nonneg(std::optional<Rat>(Rat(1) / fh), inv_hi);
    return Rat(n) + Rat(1) / t;
}

}  // namespace

Rat simplest_between(const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    if (lo && hi && !(*lo < *hi)) throw std::invalid_argument("simplest_between: empty interval");
    Rat zero(0);
    if ((!lo || *lo < zero) && (!hi || *hi > zero)) return zero;
    if (lo && *lo >= zero) {
        if (*lo == zero) {
            // (0, hi): smallest unit fraction below hi, or 1 when hi > 1.
            if (!hi || *hi > Rat(1)) return Rat(1);
            return Rat(1) / Rat(BigInt((Rat(1) / *hi).floor() + 1));
        }
        return simplest_nonneg(lo, hi);
    }
    // hi <= 0: mirror.
    std::optional<Rat> mlo, mhi;
    if (hi) mlo = -*hi;
    if (lo) mhi = -*lo;
    return -simplest_between(mlo, mhi);
}

std::vector<Rat> level_cut_values(int level) {
    if (level < 1) throw std::invalid_argument("level must be >= 1");
    std::vector<Rat> out;
    for (long long q = 1; q <= level; ++q)
        for (long long p = -level; p <= level; ++p) out.emplace_back(p, q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace oscrank
