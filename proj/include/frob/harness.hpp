#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "frob/arith.hpp"
#include "frob/budget.hpp"
#include "frob/construction.hpp"
#include "frob/covering.hpp"
#include "frob/error.hpp"
#include "frob/frobenius.hpp"
#include "frob/interval.hpp"
#include "frob/lattice.hpp"
#include "frob/mu0_search.hpp"

namespace frob {

struct DensityRequest {
    std::vector<Rational> alpha;  // N-1 entries, 0 < alpha_1 < ... < alpha_{N-1} < 1
    Rational epsilon;
    Integer t_max = 400;
    Integer tstar_max = 3;
    Integer denom_limit = 1024;  // snapping of the S_2 lattice
    Mu0SearchConfig search{.starts = 4, .max_iters = 100};
    std::optional<LatticeSpec> s2_lattice;  // skips the search when set (N = 3)
    FrobeniusConfig frobenius{};
    Deadline deadline{};

    std::size_t n() const { return alpha.size() + 1; }
};

struct DensityResult {
    FrobeniusInstance tuple;
    Integer g;
    Integer f;
    Integer t;
    std::vector<Integer> t_star;
    std::vector<Rational> alpha;
    Rational epsilon;
    std::vector<Rational> deviations;
    Interval ratio;
    LatticeSpec lattice_used;
    Interval mu_reference;
    std::optional<Rational> search_best_mu;  // N = 3
    std::size_t candidates = 0;              // tuples evaluated before acceptance
};

inline void check_density_request(const DensityRequest& req) {
    if (req.n() < 3) throw Error(Errc::DimensionTooSmall, "density experiment needs N >= 3");
    if (req.epsilon <= 0) throw Error(Errc::NonPositiveScale, "epsilon must be positive");
    for (std::size_t i = 0; i < req.alpha.size(); ++i) {
        if (req.alpha[i] <= 0 || req.alpha[i] >= 1)
            throw Error(Errc::InvalidAlpha, "alpha_" + std::to_string(i + 1) + " must lie in (0, 1)");
        if (i > 0 && req.alpha[i] <= req.alpha[i - 1]) throw Error(Errc::InvalidAlpha, "alpha must be strictly increasing");
    }
}

/// The reference constant on the right of the sharpness inequality.
inline Interval mu0_reference(std::size_t n) {
    if (n == 3) return Interval::sqrt3();
    return Interval::from_integer(Integer(static_cast<unsigned long>(n - 1)));
}

/// mu(S_2, L) / sqrt(det L) for a 2D lattice.
inline Interval normalized_mu_2d(const LatticeSpec& lattice, const Rational& rel_tol = Rational(1, 1 << 20)) {
    auto mu = inhomogeneous_minimum_2d(SimplexSpec::standard(2), lattice, rel_tol);
    return Interval::from_rational(mu.hi) / rational_root(lattice.det_abs(), 2);
}

/// Rational lattice {(1, 0), (u, v)} close to `lattice` up to scaling, with
/// the smallest denominators whose normalized covering scale stays within
/// `slack` of `target`.
inline LatticeSpec snap_s2_lattice(const LatticeSpec& lattice, const Integer& denom_limit, const Rational& target,
                                   const Rational& slack) {
    const auto& b = lattice.basis();
    if (lattice.dim() != 2 || b(0, 1) != 0) return lattice;
    const Rational p = b(0, 0);
    Rational u = b(1, 0) / p;
    u -= Rational(floor(u));
    const Rational v = abs(b(1, 1) / p);
    LatticeSpec fallback(Matrix<Rational>{{Rational(1), Rational(0)}, {u, v}});
    const Interval bound = Interval::from_rational(target + slack);
    for (Integer lim = 1; lim <= denom_limit; lim *= 2) {
        Rational su = best_rational_approximation(u, lim);
        Rational sv = best_rational_approximation(v, lim);
        if (sv <= 0) continue;
        LatticeSpec cand(Matrix<Rational>{{Rational(1), Rational(0)}, {su, sv}});
        if (!normalized_mu_2d(cand).certainly_greater(bound)) return cand;
    }
    return fallback;
}

/// L_eps = D^-1 L with D = diag(alpha), so that mu(S_alpha, L_eps) = mu(S_{N-1}, L).
inline LatticeSpec alpha_transform(const LatticeSpec& lattice, const std::vector<Rational>& alpha) {
    Matrix<Rational> b = lattice.basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= alpha[j];
    return LatticeSpec(std::move(b));
}

struct DensityLattice {
    LatticeSpec base;  // lattice for the standard simplex
    LatticeSpec transformed;
    std::optional<Rational> search_best_mu;
};

inline DensityLattice density_lattice(const DensityRequest& req) {
    DensityLattice out;
    if (req.n() == 3) {
        LatticeSpec l;
        Rational target;
        if (req.s2_lattice) {
            l = *req.s2_lattice;
            target = Interval(normalized_mu_2d(l)).hi_rational();
        } else {
            auto s = mu0_search_2d(req.search);
            l = s.best_lattice;
            target = s.best_mu;
            out.search_best_mu = s.best_mu;
        }
        out.base = snap_s2_lattice(l, req.denom_limit, target, req.epsilon / 4);
    } else {
        // The standard covering lattice scaled to determinant one: Z^(N-1).
        out.base = scale_lattice(standard_covering_lattice(req.n()), Rational(static_cast<unsigned long>(req.n() - 1)));
    }
    out.transformed = alpha_transform(out.base, req.alpha);
    return out;
}

inline bool density_accepts(const std::vector<Rational>& deviations, const Interval& ratio, const Interval& reference,
                            const Rational& epsilon) {
    for (const auto& d : deviations)
        if (!(d < epsilon)) return false;
    return ratio.certainly_less(reference + epsilon);
}

/// Construction over t* in lexicographic order and increasing gcd-one t,
/// returning the first tuple meeting both the density and sharpness
/// inequalities.
inline DensityResult density_experiment(const DensityRequest& req) {
    check_density_request(req);
    const std::size_t n = req.n();
    const DensityLattice dl = density_lattice(req);
    const ConstructionInput in = make_construction_input(dl.transformed, req.alpha);
    const Interval reference = mu0_reference(n);

    std::size_t tried = 0;
    std::optional<Interval> best_ratio;
    std::vector<Integer> ts(n - 1, 0);
    bool out_of_time = false;
    while (!out_of_time) {
        auto pm = build_parametric_matrix(in, ts);
        std::optional<MinorSet> ms;
        try {
            ms = minor_polynomials(pm, in);
        } catch (const Error& e) {
            if (e.code() != Errc::CommonFactorFound) throw;
        }
        for (Integer t = 1; ms && t <= req.t_max; ++t) {
            if (req.deadline.expired()) {
                out_of_time = true;
                break;
            }
            if (gcd_at(*ms, t) != 1) continue;
            std::optional<ConstructionOutput> out;
            try {
                out = construct_tuple(in, pm, *ms, t);
            } catch (const Error& e) {
                if (e.code() != Errc::OrderingFailed && e.code() != Errc::SignConventionFailed) throw;
                continue;
            }
            FrobeniusResult fr;
            try {
                fr = frobenius_number(out->a, req.frobenius);
            } catch (const Error& e) {
                if (e.code() != Errc::BudgetExceeded) throw;
                break;  // a_1 only grows with t
            }
            ++tried;
            Interval ratio = f_ratio(out->a, fr.f).ratio;
            if (!best_ratio || ratio.hi_rational() < best_ratio->hi_rational()) best_ratio = ratio;
            if (!density_accepts(out->deviations, ratio, reference, req.epsilon)) continue;
            return DensityResult{out->a,          fr.g,     fr.f,   t,        ts,         req.alpha,
                                 req.epsilon,     out->deviations,  ratio,    dl.transformed,
                                 reference,       dl.search_best_mu, tried};
        }
        std::size_t pos = n - 1;
        bool advanced = false;
        while (pos > 0) {
            --pos;
            if (ts[pos] < req.tstar_max) {
                ++ts[pos];
                for (std::size_t r = pos + 1; r < n - 1; ++r) ts[r] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    throw Error(Errc::BudgetExhausted, "no qualifying tuple after " + std::to_string(tried) + " candidates" +
                                           (best_ratio ? "; best ratio " + best_ratio->str(10) : std::string()));
}

/// Independent re-check of a density result from the tuple alone.
inline bool verify_density(const DensityResult& r, const FrobeniusConfig& cfg = {}) {
    auto fr = frobenius_number(r.tuple, cfg);
    if (fr.f != r.f) return false;
    std::vector<Rational> dev;
    for (std::size_t i = 0; i + 1 < r.tuple.size(); ++i)
        dev.push_back(abs(r.alpha[i] - make_rational(r.tuple[i], r.tuple.largest())));
    return density_accepts(dev, f_ratio(r.tuple, fr.f).ratio, mu0_reference(r.tuple.size()), r.epsilon);
}

struct RatioRow {
    FrobeniusInstance a;
    Integer g;
    Integer f;
    Interval ratio;
    Integer corollary1_margin;            // f^(N-1) - (N-1)! prod a_i
    std::optional<Integer> davison_margin;  // N = 3: f^2 - 3 prod a_i
    BoundsReport bounds;
    bool lower_ok = false;  // ratio > ((N-1)!)^(1/(N-1)) and all lower bounds hold
};

struct RatioTableConfig {
    std::size_t n = 3;
    Integer a_max = 60;
    std::size_t count = 200;  // sampled mode (N >= 4)
    std::uint64_t seed = 1;
    unsigned threads = 0;
    FrobeniusConfig frobenius{};
};

struct RatioTable {
    std::size_t n = 0;
    Integer a_max;
    Interval lower;
    std::vector<RatioRow> rows;
    bool all_ok = true;
    std::optional<std::size_t> argmin;  // row with the smallest ratio
};

/// Every valid triple with a_3 <= a_max in lexicographic order.
inline std::vector<FrobeniusInstance> all_triples(const Integer& a_max) {
    std::vector<FrobeniusInstance> out;
    for (Integer c = 3; c <= a_max; ++c)
        for (Integer a = 1; a < c; ++a)
            for (Integer b = a + 1; b < c; ++b) {
                if (gcd(gcd(a, b), c) != 1) continue;
                std::vector<Integer> v{a, b, c};
                out.push_back(validate_instance(v));
            }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::lexicographical_compare(x.values().begin(), x.values().end(), y.values().begin(), y.values().end());
    });
    return out;
}

/// `count` distinct valid N-tuples with 2 <= a_1 and a_N <= a_max, drawn from
/// the seeded generator and returned in lexicographic order.
inline std::vector<FrobeniusInstance> sample_tuples(std::size_t n, const Integer& a_max, std::size_t count,
                                                    std::uint64_t seed) {
    if (!fits_u64(a_max) || a_max < Integer(static_cast<unsigned long>(n + 1)))
        throw Error(Errc::DimensionMismatch, "a_max too small for N distinct elements");
    const std::uint64_t top = to_u64(a_max);
    std::mt19937_64 rng(seed);
    std::set<std::vector<std::uint64_t>> seen;
    std::size_t attempts = 0;
    while (seen.size() < count && attempts < 1000 * count + 1000) {
        ++attempts;
        std::set<std::uint64_t> pick;
        while (pick.size() < n) pick.insert(2 + rng() % (top - 1));
        std::vector<std::uint64_t> v(pick.begin(), pick.end());
        std::uint64_t g = 0;
        for (auto x : v) g = std::gcd(g, x);
        if (g == 1) seen.insert(std::move(v));
    }
    std::vector<FrobeniusInstance> out;
    for (const auto& v : seen) {
        std::vector<Integer> z;
        for (auto x : v) z.push_back(from_u64(x));
        out.push_back(validate_instance(z));
    }
    return out;
}

inline RatioRow ratio_row(const FrobeniusInstance& inst, const Interval& lower, const FrobeniusConfig& cfg) {
    const std::size_t n = inst.size();
    auto fr = frobenius_number(inst, cfg);
    const Integer prod = inst.product();
    RatioRow row{inst, fr.g, fr.f, f_ratio(inst, fr.f).ratio, pow(fr.f, n - 1) - factorial(n - 1) * prod,
                 std::nullopt, bounds_report(inst, fr), false};
    if (n == 3) row.davison_margin = fr.f * fr.f - 3 * prod;
    row.lower_ok = row.ratio.certainly_greater(lower) && row.corollary1_margin > 0 && row.bounds.lower_bounds_hold();
    return row;
}

/// Rows are independent; workers fill a pre-sized vector so the output order
/// is the instance order regardless of scheduling.
inline RatioTable ratio_table(const RatioTableConfig& cfg) {
    if (cfg.n < 3) throw Error(Errc::DimensionTooSmall, "ratio tables need N >= 3");
    const auto instances = cfg.n == 3 ? all_triples(cfg.a_max) : sample_tuples(cfg.n, cfg.a_max, cfg.count, cfg.seed);
    RatioTable table;
    table.n = cfg.n;
    table.a_max = cfg.a_max;
    table.lower = mu0_bounds(cfg.n).lower;
    std::vector<std::optional<RatioRow>> rows(instances.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto worker = [&] {
        try {
            for (std::size_t i; (i = next++) < instances.size();) rows[i] = ratio_row(instances[i], table.lower, cfg.frobenius);
        } catch (...) {
            std::lock_guard lock(m);
            if (!failure) failure = std::current_exception();
            next = instances.size();
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (auto& r : rows) {
        table.all_ok = table.all_ok && r->lower_ok;
        if (!table.argmin || r->ratio.hi_rational() < table.rows[*table.argmin].ratio.hi_rational())
            table.argmin = table.rows.size();
        table.rows.push_back(std::move(*r));
    }
    return table;
}

struct TrendRow {
    std::size_t n;
    Mu0Bounds bounds;
};

/// Bracket ((N-1)!)^(1/(N-1)) < mu0(S_{N-1}) <= N-1 and the normalized lower
/// end, for comparison against e^-1.
inline std::vector<TrendRow> mu0_trend(std::size_t n_min = 3, std::size_t n_max = 12) {
    std::vector<TrendRow> rows;
    for (std::size_t n = n_min; n <= n_max; ++n) rows.push_back(TrendRow{n, mu0_bounds(n)});
    return rows;
}

}  // namespace frob
