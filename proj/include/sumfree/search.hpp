#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumfree/constructions.hpp"

namespace sumfree {

struct SearchInstance {
    long long n = 1;
    int k = 1;
    int l = 2;
    long long node_budget = 100000000;  // decision nodes before giving up
    long long size_cap = 24;            // refuse boxes with n^k beyond this

    void validate() const {
        if (n < 1) throw std::invalid_argument("SearchInstance: n must be >= 1");
        if (k < 1) throw std::invalid_argument("SearchInstance: k must be >= 1");
        if (l < 2) throw std::invalid_argument("SearchInstance: l must be >= 2");
        if (node_budget < 1) throw std::invalid_argument("SearchInstance: node_budget must be >= 1");
        if (detail::box_size_capped(n, k, size_cap) > size_cap)
            throw std::invalid_argument("SearchInstance: box size n^k exceeds the exhaustive cap " +
                                        std::to_string(size_cap));
    }
};

struct SearchResult {
    long long max_size = 0;
    PointSet witness;
    long long nodes_explored = 0;
    bool exhaustive = true;
};

namespace detail {

/// All points of {1..n}^k in lexicographic order.
inline std::vector<LatticePoint> box_points(long long n, int k) {
    std::vector<LatticePoint> pts;
    LatticePoint cur(k, 1);
    while (true) {
        pts.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[pos] == n) {
            cur[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    return pts;
}

/// Incremental feasibility for the branch-and-bound: may candidate be added
/// to the (already l-fold-sumfree) chosen set? Only tuples involving the
/// candidate need checking: (a) multisets of l chosen-or-candidate points
/// with at least one candidate copy whose sum lands back in the set, and
/// (b) multisets of l previously chosen points summing to the candidate.
/// The candidate is lexicographically larger than everything chosen, so in
/// (a) it can always be placed last.
class IncrementalChecker {
  public:
    IncrementalChecker(long long n, int k, int l) : n_(n), k_(k), l_(l), partial_(k, 0) {}

    bool can_add(const LatticePoint& candidate, const std::vector<LatticePoint>& chosen,
                 const PointSet& membership) const {
        cand_ = &candidate;
        chosen_ = &chosen;
        membership_ = &membership;
        std::fill(partial_.begin(), partial_.end(), 0);
        add(candidate);  // one fixed candidate copy for part (a)
        const bool sums_ok = sums_stay_out(0, l_ - 1);
        sub(candidate);
        return sums_ok && no_chosen_sum_hits(0, l_, candidate);
    }

  private:
    void add(const LatticePoint& p) const {
        for (int c = 0; c < k_; ++c) partial_[c] += p[c];
    }
    void sub(const LatticePoint& p) const {
        for (int c = 0; c < k_; ++c) partial_[c] -= p[c];
    }

    // (a): fill `remaining` more slots with points <= candidate (chosen set
    // plus the candidate itself), nondecreasing; partial_ already holds one
    // candidate copy. False once some completed sum is a member.
    bool sums_stay_out(std::size_t start, int remaining) const {
        if (remaining == 0) return !membership_->contains(partial_) && partial_ != *cand_;
        const std::size_t options = chosen_->size() + 1;  // index options == candidate
        for (std::size_t i = start; i < options; ++i) {
            const LatticePoint& p = i < chosen_->size() ? (*chosen_)[i] : *cand_;
            bool fits = true;
            for (int c = 0; c < k_; ++c) {
                if (partial_[c] + p[c] + (remaining - 1) > n_) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            add(p);
            const bool ok = sums_stay_out(i, remaining - 1);
            sub(p);
            if (!ok) return false;
        }
        return true;
    }

    // (b): multisets of size `remaining` from the chosen set summing exactly
    // to the candidate.
    bool no_chosen_sum_hits(std::size_t start, int remaining, const LatticePoint& target) const {
        if (remaining == 0) return partial_ != target;
        for (std::size_t i = start; i < chosen_->size(); ++i) {
            const LatticePoint& p = (*chosen_)[i];
            bool fits = true;
            for (int c = 0; c < k_; ++c) {
                if (partial_[c] + p[c] + (remaining - 1) > target[c]) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            add(p);
            const bool ok = no_chosen_sum_hits(i, remaining - 1, target);
            sub(p);
            if (!ok) return false;
        }
        return true;
    }

    long long n_;
    int k_;
    int l_;
    mutable LatticePoint partial_;
    mutable const LatticePoint* cand_ = nullptr;
    mutable const std::vector<LatticePoint>* chosen_ = nullptr;
    mutable const PointSet* membership_ = nullptr;
};

}  // namespace detail

/// Exact maximum l-fold-sumfree subset of {1..n}^k by branch-and-bound in
/// lexicographic point order, include branch first, pruned when the current
/// size plus all remaining points cannot beat the incumbent. Include-first
/// order plus strict improvement makes the returned witness the
/// lexicographically smallest optimal set.
inline SearchResult max_sumfree_exact(const SearchInstance& inst) {
    inst.validate();
    const auto pts = detail::box_points(inst.n, inst.k);
    const auto total = static_cast<long long>(pts.size());

    std::vector<LatticePoint> chosen;
    PointSet membership(inst.n, inst.k);
    detail::IncrementalChecker checker(inst.n, inst.k, inst.l);

    std::vector<LatticePoint> best;
    long long nodes = 0;
    bool aborted = false;

    std::function<void(long long)> dfs = [&](long long idx) {
        if (aborted) return;
        if (++nodes > inst.node_budget) {
            aborted = true;
            return;
        }
        if (idx == total) {
            if (static_cast<long long>(chosen.size()) > static_cast<long long>(best.size()))
                best = chosen;
            return;
        }
        if (static_cast<long long>(chosen.size()) + (total - idx) <=
            static_cast<long long>(best.size()))
            return;  // cannot beat the incumbent

        if (checker.can_add(pts[idx], chosen, membership)) {
            chosen.push_back(pts[idx]);
            membership.insert(pts[idx]);
            dfs(idx + 1);
            chosen.pop_back();
            membership.erase(pts[idx]);
        }
        dfs(idx + 1);
    };
    dfs(0);

    SearchResult result{0, PointSet(inst.n, inst.k), nodes, !aborted};
    result.max_size = static_cast<long long>(best.size());
    for (const auto& p : best) result.witness.insert(p);
    return result;
}

/// Independent re-check of a search witness (or any set) against the
/// exhaustive predicate.
inline bool verify_witness(const PointSet& s, int l) {
    return static_cast<bool>(is_l_fold_sumfree(s, l));
}

}  // namespace sumfree
