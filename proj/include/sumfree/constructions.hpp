#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sumfree/exact_math.hpp"
#include "sumfree/rational.hpp"

namespace sumfree {

/// A point of the integer box {1..n}^k, stored as its coordinate vector.
using LatticePoint = std::vector<int>;

struct LatticePointHash {
    std::size_t operator()(const LatticePoint& p) const noexcept {
        // FNV-1a over the coordinates; deterministic across runs.
        std::uint64_t h = 1469598103934665603ull;
        for (int c : p) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Finite subset of an ambient box {1..n}^k. Inserts are validated against
/// the ambient bounds so that sum checks can rely on 1 <= coord <= n.
class PointSet {
  public:
    PointSet(long long n, int k) : n_(n), k_(k) {
        if (n < 1) throw std::invalid_argument("PointSet: n must be >= 1");
        if (k < 1) throw std::invalid_argument("PointSet: k must be >= 1");
    }

    long long ambient_n() const { return n_; }
    int ambient_k() const { return k_; }

    /// False if the point was already present.
    bool insert(LatticePoint p) {
        check_point(p);
        return points_.insert(std::move(p)).second;
    }

    bool contains(const LatticePoint& p) const {
        return points_.find(p) != points_.end();
    }

    /// False if the point was not present.
    bool erase(const LatticePoint& p) { return points_.erase(p) > 0; }

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Lexicographically sorted copy; use this wherever order matters.
    std::vector<LatticePoint> sorted_points() const {
        std::vector<LatticePoint> out(points_.begin(), points_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::unordered_set<LatticePoint, LatticePointHash>& raw() const { return points_; }

  private:
    void check_point(const LatticePoint& p) const {
        if (static_cast<int>(p.size()) != k_)
            throw std::invalid_argument("PointSet: point dimension does not match ambient k");
        for (int c : p)
            if (c < 1 || c > n_)
                throw std::invalid_argument("PointSet: coordinate outside {1..n}");
    }

    long long n_;
    int k_;
    std::unordered_set<LatticePoint, LatticePointHash> points_;
};

/// Stripe S(n, k, a): points of {1..n}^k whose coordinate sum t satisfies
/// a <= t < l*a. Sums of l stripe members are >= l*a, hence outside the
/// stripe, which is what makes stripes l-fold-sumfree witnesses.
struct StripeSpec {
    long long n;
    int k;
    Rational a;
    int l;

    StripeSpec(long long n_, int k_, Rational a_, int l_)
        : n(n_), k(k_), a(std::move(a_)), l(l_) {
        if (n < 1) throw std::invalid_argument("StripeSpec: n must be >= 1");
        if (k < 1) throw std::invalid_argument("StripeSpec: k must be >= 1");
        if (l < 2) throw std::invalid_argument("StripeSpec: l must be >= 2");
        if (a <= 0) throw std::invalid_argument("StripeSpec: a must be > 0");
    }
};

inline bool stripe_contains(const StripeSpec& spec, const LatticePoint& p) {
    if (static_cast<int>(p.size()) != spec.k)
        throw std::invalid_argument("stripe_contains: point dimension does not match spec.k");
    long long sum = 0;
    for (int c : p) {
        if (c < 1 || c > spec.n)
            throw std::invalid_argument("stripe_contains: coordinate outside {1..n}");
        sum += c;
    }
    return sum >= spec.a && Rational(sum) < Rational(spec.l) * spec.a;
}

/// |S(n, k, a)| by summing the cross-section counts over the integer sums
/// in [a, l*a). No enumeration: each cross-section size comes from the
/// bounded composition formula.
inline BigInt stripe_count(const StripeSpec& spec) {
    // smallest integer >= a, and largest integer < l*a
    const BigInt lo_big = ceil_of(spec.a);
    const Rational la = Rational(spec.l) * spec.a;
    BigInt hi_big = floor_of(la);
    if (Rational(hi_big) == la) --hi_big;  // strict upper end

    const long long band_top = static_cast<long long>(spec.k) * spec.n;
    if (lo_big > band_top || hi_big < spec.k) return BigInt(0);
    long long lo = static_cast<long long>(std::max(lo_big, BigInt(static_cast<long long>(spec.k))));
    long long hi = hi_big > band_top ? band_top : static_cast<long long>(hi_big);

    BigInt total = 0;
    for (long long m = lo; m <= hi; ++m)
        total += bounded_composition_count(spec.k, spec.n, m);
    return total;
}

/// One forbidden configuration: l points of the set (repetition allowed,
/// listed in nondecreasing order) whose coordinate-wise sum is again in the
/// set.
struct SumfreeViolation {
    std::vector<LatticePoint> summands;
    LatticePoint target;
};

struct SumfreeCheck {
    bool sumfree = true;
    std::optional<SumfreeViolation> violation;
    explicit operator bool() const { return sumfree; }
};

/// Exhaustive check that no l points of s (with repetition) sum to a point
/// of s. Cost is O(|s|^l) tuples in the worst case, though coordinate-sum
/// overflow past n prunes most of them; intended for |s|^l up to ~1e8.
inline SumfreeCheck is_l_fold_sumfree(const PointSet& s, int l) {
    if (l < 2) throw std::invalid_argument("is_l_fold_sumfree: l must be >= 2");
    const auto pts = s.sorted_points();
    const long long n = s.ambient_n();
    const int k = s.ambient_k();

    SumfreeCheck result;
    std::vector<std::size_t> chosen(l);
    LatticePoint partial(k, 0);

    // Nondecreasing index tuples; prune a candidate when some coordinate
    // cannot stay <= n even if every remaining summand contributes its
    // minimum of 1. Stops at the first violation.
    std::function<void(std::size_t, int)> extend = [&](std::size_t start, int depth) {
        const int remaining_after = l - depth - 1;
        for (std::size_t i = start; i < pts.size() && result.sumfree; ++i) {
            bool feasible = true;
            for (int c = 0; c < k; ++c) {
                if (partial[c] + pts[i][c] + remaining_after > n) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            for (int c = 0; c < k; ++c) partial[c] += pts[i][c];
            chosen[depth] = i;
            if (depth + 1 == l) {
                if (s.contains(partial)) {
                    SumfreeViolation v;
                    v.summands.reserve(l);
                    for (int d = 0; d < l; ++d) v.summands.push_back(pts[chosen[d]]);
                    v.target = partial;
                    result.sumfree = false;
                    result.violation = std::move(v);
                }
            } else {
                extend(i, depth + 1);
            }
            for (int c = 0; c < k; ++c) partial[c] -= pts[i][c];
        }
    };
    extend(0, 0);
    return result;
}

/// Union of cross-sections: given a set A of target sums, all points of
/// {1..n}^k whose coordinate sum lies in A. If A is l-fold-sumfree as an
/// integer set, the union is l-fold-sumfree as a point set.
struct CrossSectionFamily {
    long long n;
    int k;
    std::set<long long> sums;

    CrossSectionFamily(long long n_, int k_, std::set<long long> sums_)
        : n(n_), k(k_), sums(std::move(sums_)) {
        if (n < 1) throw std::invalid_argument("CrossSectionFamily: n must be >= 1");
        if (k < 1) throw std::invalid_argument("CrossSectionFamily: k must be >= 1");
        for (long long m : sums)
            if (m < k || m > static_cast<long long>(k) * n)
                throw std::invalid_argument("CrossSectionFamily: sum outside {k..k*n}");
    }
};

namespace detail {

inline constexpr long long kMaterializeCap = 100000;  // box sizes n^k beyond this refuse to enumerate

inline long long box_size_capped(long long n, int k, long long cap) {
    long long size = 1;
    for (int i = 0; i < k; ++i) {
        if (size > cap / n) return cap + 1;
        size *= n;
    }
    return size;
}

inline void require_enumerable(long long n, int k) {
    if (box_size_capped(n, k, kMaterializeCap) > kMaterializeCap)
        throw std::invalid_argument("box enumeration refused: n^k exceeds cap " +
                                    std::to_string(kMaterializeCap));
}

/// All points of {1..n}^k with coordinate sum m, in lexicographic order.
inline void append_cross_section(long long n, int k, long long m,
                                 std::vector<LatticePoint>& out) {
    LatticePoint cur(k);
    std::function<void(int, long long)> rec = [&](int pos, long long left) {
        const int rest = k - pos - 1;
        long long lo = std::max<long long>(1, left - static_cast<long long>(rest) * n);
        long long hi = std::min<long long>(n, left - rest);
        if (pos + 1 == k) {
            if (left >= 1 && left <= n) {
                cur[pos] = static_cast<int>(left);
                out.push_back(cur);
            }
            return;
        }
        for (long long v = lo; v <= hi; ++v) {
            cur[pos] = static_cast<int>(v);
            rec(pos + 1, left - v);
        }
    };
    if (m >= k && m <= static_cast<long long>(k) * n) rec(0, m);
}

}  // namespace detail

inline PointSet cross_section_union(const CrossSectionFamily& family) {
    detail::require_enumerable(family.n, family.k);
    PointSet out(family.n, family.k);
    std::vector<LatticePoint> buffer;
    for (long long m : family.sums) {
        buffer.clear();
        detail::append_cross_section(family.n, family.k, m, buffer);
        for (auto& p : buffer) out.insert(std::move(p));
    }
    return out;
}

/// Enumerate a stripe as an explicit point set (same cap as above).
inline PointSet materialize_stripe(const StripeSpec& spec) {
    detail::require_enumerable(spec.n, spec.k);
    const BigInt lo_big = ceil_of(spec.a);
    const Rational la = Rational(spec.l) * spec.a;
    BigInt hi_big = floor_of(la);
    if (Rational(hi_big) == la) --hi_big;

    PointSet out(spec.n, spec.k);
    std::vector<LatticePoint> buffer;
    const long long band_top = static_cast<long long>(spec.k) * spec.n;
    if (lo_big > band_top || hi_big < spec.k) return out;
    long long lo = static_cast<long long>(std::max(lo_big, BigInt(static_cast<long long>(spec.k))));
    long long hi = hi_big > band_top ? band_top : static_cast<long long>(hi_big);
    for (long long m = lo; m <= hi; ++m) {
        buffer.clear();
        detail::append_cross_section(spec.n, spec.k, m, buffer);
        for (auto& p : buffer) out.insert(std::move(p));
    }
    return out;
}

}  // namespace sumfree
