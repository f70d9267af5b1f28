#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumfree/exact_math.hpp"
#include "sumfree/rational.hpp"

namespace sumfree {

/// Which density constant a bound refers to: subsets of the discrete cube
/// {1..n}^k or of the continuous cube [0,1]^k, for sums of two (plain
/// sumfree) or of l terms.
enum class ConstantLabel { discrete_sumfree, continuous_sumfree, discrete_lfold, continuous_lfold };

enum class BoundSide { lower, upper };

enum class BoundMethod { stripe, fixed_point, iterated_map, explicit_threefold, sweep };

/// "c_2", "c~_2", "c_{2,3}", "c~_{2,3}"
inline std::string constant_name(ConstantLabel label, int k, int l) {
    switch (label) {
        case ConstantLabel::discrete_sumfree: return "c_" + std::to_string(k);
        case ConstantLabel::continuous_sumfree: return "c~_" + std::to_string(k);
        case ConstantLabel::discrete_lfold:
            return "c_{" + std::to_string(k) + "," + std::to_string(l) + "}";
        case ConstantLabel::continuous_lfold:
            return "c~_{" + std::to_string(k) + "," + std::to_string(l) + "}";
    }
    return "?";
}

inline std::string method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::stripe: return "stripe";
        case BoundMethod::fixed_point: return "fixed_point";
        case BoundMethod::iterated_map: return "iterated_map";
        case BoundMethod::explicit_threefold: return "explicit_threefold";
        case BoundMethod::sweep: return "sweep";
    }
    return "?";
}

struct BoundResult {
    ConstantLabel constant;
    BoundSide side;
    int k = 0;
    int l = 2;
    double value = 0.0;
    std::optional<Rational> exact_value;
    BoundMethod method = BoundMethod::stripe;
    std::map<std::string, double> params;  // method-specific diagnostics
    std::string note;
};

struct SolverConfig {
    double bisection_tolerance = 1e-12;
    int max_bisection_iters = 200;
    double sweep_grid_step = 1e-4;
    int sweep_refinement_iters = 60;
    int phi_iteration_cap = 10000;
    double series_term_floor = 1e-18;  // relative to the running sum

    void validate() const {
        if (!(bisection_tolerance > 0) || bisection_tolerance >= 1e-6)
            throw std::invalid_argument("SolverConfig: tolerance must lie in (0, 1e-6)");
        if (max_bisection_iters <= 0 || sweep_refinement_iters <= 0 || phi_iteration_cap <= 0)
            throw std::invalid_argument("SolverConfig: iteration limits must be positive");
        if (!(sweep_grid_step > 0) || !(series_term_floor > 0))
            throw std::invalid_argument("SolverConfig: steps and floors must be positive");
    }
};

enum class EquationVariant { theorem_statement, proof_form };

/// Fixed-point equation selector for the discrete upper bound. The two
/// published forms of the equation do not agree (they have different roots);
/// theorem_statement is the one whose roots match the reference table.
struct UpperBoundEquation {
    int k;
    EquationVariant variant = EquationVariant::theorem_statement;

    UpperBoundEquation(int k_, EquationVariant v = EquationVariant::theorem_statement)
        : k(k_), variant(v) {
        if (k < 1) throw std::domain_error("UpperBoundEquation: k must be >= 1");
    }
};

namespace detail {

// Bisection interval for alpha, kept strictly inside (1/2, 1) so that
// ln(1/(2-2*alpha)) stays finite.
inline constexpr double kAlphaLo = 0.5 + 1e-15;
inline constexpr double kAlphaHi = 1.0 - 1e-12;

struct BisectionOutcome {
    double root = 0.0;
    int iterations = 0;
};

/// Plain bisection on [lo, hi]; requires a sign change. Runs until the
/// bracket is narrower than tol or the iteration cap is reached. Entirely
/// deterministic for fixed inputs.
template <typename F>
BisectionOutcome bisect(F&& f, double lo, double hi, double tol, int max_iters) {
    double flo = f(lo);
    double fhi = f(hi);
    if ((flo > 0) == (fhi > 0))
        throw std::domain_error("bisection: no sign change over the bracket");
    BisectionOutcome out;
    while (hi - lo > tol && out.iterations < max_iters) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        ++out.iterations;
    }
    out.root = 0.5 * (lo + hi);
    return out;
}

/// Partial sum  sum_{i=0}^{top} x^i / i!  (ascending, all terms positive).
inline double exp_partial_sum(double x, int top) {
    double term = 1.0, sum = 0.0;
    for (int i = 0; i <= top; ++i) {
        sum += term;
        term *= x / (i + 1);
    }
    return sum;
}

}  // namespace detail

/// Volume of the stripe {x in [0,1]^k : a <= sum x_i < l*a}, exact.
/// Complement of two corner simplices: the lower cut of size a and, by the
/// reflection x -> 1-x, the upper cut of size k - min(l*a, k).
inline Rational stripe_volume(int k, const Rational& a, int l) {
    if (l < 2) throw std::invalid_argument("stripe_volume: l must be >= 2");
    if (a < 0 || a > k) throw std::domain_error("stripe_volume: a must lie in [0, k]");
    const Rational la = Rational(l) * a;
    const Rational upper_cut = Rational(k) - (la > k ? Rational(k) : la);
    return 1 - simplex_volume(k, a) - simplex_volume(k, upper_cut);
}

/// Float companion used by the sweep.
inline double stripe_volume(int k, double a, int l) {
    if (l < 2) throw std::invalid_argument("stripe_volume: l must be >= 2");
    if (!(a >= 0.0) || a > static_cast<double>(k))
        throw std::domain_error("stripe_volume: a must lie in [0, k]");
    const double la = std::min(static_cast<double>(l) * a, static_cast<double>(k));
    return 1.0 - simplex_volume(k, a) - simplex_volume(k, static_cast<double>(k) - la);
}

/// Stripe lower bound at the fixed threshold a = k/(l+1), where the two cut
/// simplices coincide by reflection: value = 1 - 2 Vol{sum x_i <= k/(l+1)}.
inline BoundResult lower_bound(int k, int l) {
    if (k < 1) throw std::domain_error("lower_bound: k must be >= 1");
    if (l < 2) throw std::invalid_argument("lower_bound: l must be >= 2");
    const Rational a(k, l + 1);
    const Rational exact = 1 - 2 * simplex_volume(k, a);

    BoundResult r;
    r.constant = l == 2 ? ConstantLabel::discrete_sumfree : ConstantLabel::discrete_lfold;
    r.side = BoundSide::lower;
    r.k = k;
    r.l = l;
    r.exact_value = exact;
    r.value = to_double(exact);
    r.method = BoundMethod::stripe;
    r.params["a"] = to_double(a);
    return r;
}

struct SweepResult {
    double a_opt = 0.0;
    double volume = 0.0;
    double a_reference = 0.0;         // the fixed choice k/(l+1)
    double volume_at_reference = 0.0;
    double reference_gap = 0.0;       // |a_opt - a_reference|
};

/// Maximize stripe_volume(k, a, l) over a in (0, k/l]: grid scan at
/// cfg.sweep_grid_step, then golden-section refinement on the best cell and
/// its neighbors. Beyond k/l the upper boundary of the stripe leaves the
/// cube and the volume only decreases, so the domain cap loses nothing.
inline SweepResult sweep_optimal_a(int k, int l, const SolverConfig& cfg = {}, int max_k = 60) {
    if (k < 1) throw std::domain_error("sweep_optimal_a: k must be >= 1");
    if (k > max_k)
        throw std::invalid_argument("sweep_optimal_a: k exceeds the sweep cap " +
                                    std::to_string(max_k));
    if (l < 2) throw std::invalid_argument("sweep_optimal_a: l must be >= 2");
    cfg.validate();

    const double top = static_cast<double>(k) / l;
    const double step = cfg.sweep_grid_step;
    const auto eval = [&](double a) { return stripe_volume(k, a, l); };

    double best_a = top;
    double best_v = eval(top);
    const auto consider = [&](double a, double v) {
        if (v > best_v) {
            best_v = v;
            best_a = a;
        }
    };

    const long long cells = static_cast<long long>(std::floor(top / step + 1e-9));
    for (long long j = 1; j <= cells; ++j) {
        const double a = std::min(j * step, top);
        consider(a, eval(a));
    }

    // Refine around the winner.
    double lo = std::max(best_a - step, step * 1e-3);
    double hi = std::min(best_a + step, top);
    constexpr double inv_golden = 0.6180339887498949;
    double x1 = hi - inv_golden * (hi - lo);
    double x2 = lo + inv_golden * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    consider(x1, f1);
    consider(x2, f2);
    for (int it = 0; it < cfg.sweep_refinement_iters; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_golden * (hi - lo);
            f2 = eval(x2);
            consider(x2, f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_golden * (hi - lo);
            f1 = eval(x1);
            consider(x1, f1);
        }
    }

    SweepResult r;
    r.a_opt = best_a;
    r.volume = best_v;
    r.a_reference = static_cast<double>(k) / (l + 1);
    r.volume_at_reference = to_double(stripe_volume(k, Rational(k, l + 1), l));
    r.reference_gap = std::abs(r.a_opt - r.a_reference);
    return r;
}

/// a_0 = 1/3, a_{i+1} = 1/3 - a_i^{a_i} (1-a_i)^{1-a_i} / e. Truncates once
/// a term is <= 0 (the recurrence needs x^x, undefined there); the sign flip
/// is the point of the sequence, so the nonpositive term is kept.
inline std::vector<double> corollary_sequence(int terms) {
    if (terms < 1 || terms > 100)
        throw std::invalid_argument("corollary_sequence: terms must lie in 1..100");
    std::vector<double> seq;
    seq.reserve(terms);
    seq.push_back(1.0 / 3.0);
    while (static_cast<int>(seq.size()) < terms && seq.back() > 0.0) {
        const double x = seq.back();
        const double weight = std::exp(x * std::log(x) + (1.0 - x) * std::log1p(-x) - 1.0);
        seq.push_back(1.0 / 3.0 - weight);
    }
    return seq;
}

/// Upper bound for the discrete constant c_k as the root of a fixed-point
/// equation in alpha on (1/2, 1), solved by bisection.
///
/// theorem_statement: alpha = (2-2 alpha) (1 + sum_{i=0}^{k} L^i/i!),
/// proof_form:        1 - beta/2 = beta sum_{i=0}^{k-1} L_b^i/i!,  alpha = 1 - beta/2,
/// with L = ln(1/(2-2 alpha)) and L_b = ln(1/beta). The two equations have
/// different roots; see UpperBoundEquation.
inline BoundResult alpha_star(const UpperBoundEquation& eq, const SolverConfig& cfg = {}) {
    cfg.validate();
    const int k = eq.k;

    BoundResult r;
    r.constant = ConstantLabel::discrete_sumfree;
    r.side = BoundSide::upper;
    r.k = k;
    r.l = 2;
    r.method = BoundMethod::fixed_point;

    if (eq.variant == EquationVariant::theorem_statement) {
        const auto residual_fn = [k](double alpha) {
            const double beta = 2.0 - 2.0 * alpha;
            const double big_l = std::log(1.0 / beta);
            return beta * (1.0 + detail::exp_partial_sum(big_l, k)) - alpha;
        };
        const auto out = detail::bisect(residual_fn, detail::kAlphaLo, detail::kAlphaHi,
                                        cfg.bisection_tolerance, cfg.max_bisection_iters);
        r.value = out.root;
        r.params["iterations"] = out.iterations;
        r.params["residual"] = std::abs(residual_fn(out.root));
    } else {
        const auto residual_fn = [k](double beta) {
            const double big_l = std::log(1.0 / beta);
            return 1.0 - beta / 2.0 - beta * detail::exp_partial_sum(big_l, k - 1);
        };
        const auto out = detail::bisect(residual_fn, 1e-15, 1.0, cfg.bisection_tolerance,
                                        cfg.max_bisection_iters);
        r.value = 1.0 - out.root / 2.0;
        r.params["iterations"] = out.iterations;
        r.params["residual"] = std::abs(residual_fn(out.root));
        r.params["beta_root"] = out.root;
        r.note = "proof-form equation; its root differs from the statement-form root";
    }
    return r;
}

/// Volume of {x in [0,1]^k : prod x_i > beta}, the wedge cut off by the
/// hyperbola-like surface prod x_i = beta.
inline double wedge_volume(int k, double beta) {
    if (k < 1) throw std::domain_error("wedge_volume: k must be >= 1");
    if (!(beta > 0.0) || beta > 1.0)
        throw std::domain_error("wedge_volume: beta must lie in (0, 1]");
    return log_wedge_complement(k, beta);
}

/// One step of the density map: phi_k(alpha) = alpha/(2-2 alpha)
/// - sum_{i=1}^{k-1} L^i/i!, L = ln(1/(2-2 alpha)). Strictly increasing in
/// alpha, fixed point at 1/2.
inline double phi_map(int k, double alpha) {
    if (k < 1) throw std::domain_error("phi_map: k must be >= 1");
    if (!(alpha >= 0.5) || !(alpha < 1.0))
        throw std::domain_error("phi_map: alpha must lie in [1/2, 1)");
    const double beta = 2.0 - 2.0 * alpha;
    const double big_l = std::log(1.0 / beta);
    return alpha / beta - (detail::exp_partial_sum(big_l, k - 1) - 1.0);
}

/// Upper bound for the continuous constant c~_k: the root of
/// psi_k(alpha) = 1/2 - alpha + sum_{i=k}^{inf} L^i/i! on (1/2, 1).
/// psi leaves 1/2 with slope -1, dips negative, and crosses back up; the
/// bracket is found by scanning in 1e-3 steps for the sign change, the tail
/// is summed ascending (never as e^L minus a partial sum, which cancels).
inline BoundResult alpha_double_star(int k, const SolverConfig& cfg = {}) {
    if (k < 1) throw std::domain_error("alpha_double_star: k must be >= 1");
    cfg.validate();

    const auto psi = [&](double alpha) {
        const double big_l = std::log(1.0 / (2.0 - 2.0 * alpha));
        return 0.5 - alpha + exp_series_tail(big_l, k, cfg.series_term_floor);
    };

    double prev = 0.5 + cfg.bisection_tolerance;
    if (psi(prev) > 0.0)
        throw std::domain_error(
            "alpha_double_star: psi is already positive at 1/2+, no interior root (k = " +
            std::to_string(k) + ")");
    double alpha = prev;
    bool bracketed = false;
    while (alpha < 1.0 - 1e-9) {
        alpha = std::min(alpha + 1e-3, 1.0 - 1e-9);
        if (psi(alpha) > 0.0) {
            bracketed = true;
            break;
        }
        prev = alpha;
    }
    if (!bracketed)
        throw std::domain_error("alpha_double_star: no sign change found below 1 - 1e-9");

    const auto out =
        detail::bisect(psi, prev, alpha, cfg.bisection_tolerance, cfg.max_bisection_iters);

    BoundResult r;
    r.constant = ConstantLabel::continuous_sumfree;
    r.side = BoundSide::upper;
    r.k = k;
    r.l = 2;
    r.value = out.root;
    r.method = BoundMethod::iterated_map;
    r.params["iterations"] = out.iterations;
    r.params["residual"] = std::abs(psi(out.root));
    return r;
}

enum class PhiTermination { exceeded_one, no_escape, iteration_cap };

struct PhiTrajectory {
    std::vector<double> values;  // alpha0 first, then each iterate
    PhiTermination reason = PhiTermination::iteration_cap;
};

/// Iterate phi_map from alpha0. Stops when an iterate exceeds 1 (the
/// density contradiction the map is for), fails to increase (no escape from
/// the fixed-point basin), or the iteration cap is reached.
inline PhiTrajectory iterate_phi(int k, double alpha0, const SolverConfig& cfg = {}) {
    if (k < 1) throw std::domain_error("iterate_phi: k must be >= 1");
    if (!(alpha0 >= 0.5) || !(alpha0 < 1.0))
        throw std::domain_error("iterate_phi: alpha0 must lie in [1/2, 1)");
    cfg.validate();

    PhiTrajectory t;
    t.values.push_back(alpha0);
    for (int i = 0; i < cfg.phi_iteration_cap; ++i) {
        const double cur = t.values.back();
        const double next = phi_map(k, cur);
        t.values.push_back(next);
        if (next > 1.0) {
            t.reason = PhiTermination::exceeded_one;
            return t;
        }
        if (next <= cur) {
            t.reason = PhiTermination::no_escape;
            return t;
        }
        if (next >= 1.0) {  // hit 1.0 exactly; cannot feed back into phi_map
            t.reason = PhiTermination::exceeded_one;
            return t;
        }
    }
    t.reason = PhiTermination::iteration_cap;
    return t;
}

/// Explicit 3-fold upper bound 1 - 1/(1+2^{1/k})^k, valid for both the
/// discrete and the continuous constant.
inline BoundResult threefold_upper_bound(int k) {
    if (k < 1) throw std::domain_error("threefold_upper_bound: k must be >= 1");
    BoundResult r;
    r.constant = ConstantLabel::discrete_lfold;
    r.side = BoundSide::upper;
    r.k = k;
    r.l = 3;
    r.value = 1.0 - 1.0 / std::pow(1.0 + std::pow(2.0, 1.0 / k), k);
    r.method = BoundMethod::explicit_threefold;
    r.note = "applies to the discrete and continuous 3-fold constants alike";
    return r;
}

}  // namespace sumfree
