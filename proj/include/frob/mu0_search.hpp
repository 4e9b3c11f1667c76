#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "frob/arith.hpp"
#include "frob/budget.hpp"
#include "frob/covering.hpp"
#include "frob/interval.hpp"
#include "frob/lattice.hpp"

namespace frob {

struct Mu0SearchConfig {
    std::size_t starts = 16;
    std::size_t max_iters = 200;
    Integer denom_limit = 65536;
    Rational rel_tol = Rational(1, 1 << 20);
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    Deadline deadline{};
};

/// One evaluated det-1 lattice with basis {(p, 0), (q, 1/p)}.
struct Mu0Probe {
    Rational p;
    Rational q;
    Rational mu_lo;
    Rational mu_hi;
};

struct Mu0SearchResult {
    Rational best_mu;  // certified covering scale of the best probe
    Rational best_mu_lo;
    Rational best_p;
    Rational best_q;
    LatticeSpec best_lattice;
    Interval gamma_estimate;  // best_mu^-2
    std::vector<Mu0Probe> trace;
    bool budget_exhausted = false;
};

/// Basis {(p, 0), (q, 1/p)}: determinant one for every p > 0.
inline LatticeSpec unit_lattice(const Rational& p, const Rational& q) {
    return LatticeSpec(Matrix<Rational>{{p, Rational(0)}, {q, 1 / p}});
}

namespace detail {

inline const Rational kPMin(1, 4);
inline const Rational kPMax(4);
inline const Rational kQMin(-2);
inline const Rational kQMax(2);

class Mu0Objective {
public:
    explicit Mu0Objective(const Mu0SearchConfig& cfg) : cfg_(cfg) {}

    /// Snaps (p, q) to rationals, rejects points outside the domain with +inf.
    double operator()(double p, double q) {
        if (!std::isfinite(p) || !std::isfinite(q)) return kReject;
        Rational rp = best_rational_approximation(rational_from_double(p), cfg_.denom_limit);
        Rational rq = best_rational_approximation(rational_from_double(q), cfg_.denom_limit);
        if (rp < kPMin || rp > kPMax || rq < kQMin || rq > kQMax) return kReject;
        auto key = std::make_pair(rp, rq);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        auto mu = inhomogeneous_minimum_2d(SimplexSpec::standard(2), unit_lattice(rp, rq), cfg_.rel_tol);
        trace_.push_back(Mu0Probe{rp, rq, mu.lo, mu.hi});
        double v = mu.hi.get_d();
        cache_.emplace(std::move(key), v);
        return v;
    }

    const std::vector<Mu0Probe>& trace() const { return trace_; }

    static constexpr double kReject = std::numeric_limits<double>::infinity();

private:
    struct Less {
        bool operator()(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        }
    };
    const Mu0SearchConfig& cfg_;
    std::map<std::pair<Rational, Rational>, double, Less> cache_;
    std::vector<Mu0Probe> trace_;
};

/// Nelder-Mead in the (p, q) plane with restarts around the incumbent when
/// the simplex collapses. Returns after `max_iters` iterations.
inline void nelder_mead(Mu0Objective& fn, std::array<double, 2> start, std::size_t max_iters,
                        const Deadline& deadline, bool& exhausted) {
    using Vec = std::array<double, 2>;
    double step = 0.25;
    std::array<Vec, 3> x;
    std::array<double, 3> fx;
    auto init = [&](const Vec& c, double h) {
        x = {c, Vec{c[0] + h, c[1]}, Vec{c[0], c[1] + h}};
        for (int i = 0; i < 3; ++i) fx[i] = fn(x[i][0], x[i][1]);
    };
    init(start, step);
    for (std::size_t it = 0; it < max_iters; ++it) {
        if (deadline.expired()) {
            exhausted = true;
            return;
        }
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const Vec best = x[idx[0]], mid = x[idx[1]], worst = x[idx[2]];
        const double fb = fx[idx[0]], fm = fx[idx[1]], fw = fx[idx[2]];
        double size = std::max(std::hypot(mid[0] - best[0], mid[1] - best[1]),
                               std::hypot(worst[0] - best[0], worst[1] - best[1]));
        if (size < 1e-7) {
            step = std::max(step * 0.5, 1e-4);
            init(best, step);
            continue;
        }
        const Vec c = {(best[0] + mid[0]) / 2, (best[1] + mid[1]) / 2};
        auto along = [&](double t) { return Vec{c[0] + t * (worst[0] - c[0]), c[1] + t * (worst[1] - c[1])}; };
        Vec xr = along(-1.0);
        double fr = fn(xr[0], xr[1]);
        Vec next = worst;
        double fnext = fw;
        if (fr < fb) {
            Vec xe = along(-2.0);
            double fe = fn(xe[0], xe[1]);
            if (fe < fr) { next = xe; fnext = fe; }
            else { next = xr; fnext = fr; }
        } else if (fr < fm) {
            next = xr;
            fnext = fr;
        } else {
            Vec xc = fr < fw ? along(-0.5) : along(0.5);
            double fc = fn(xc[0], xc[1]);
            if (fc < std::min(fr, fw)) {
                next = xc;
                fnext = fc;
            } else {
                // Shrink toward the best vertex.
                for (int k : {idx[1], idx[2]}) {
                    x[k] = Vec{best[0] + 0.5 * (x[k][0] - best[0]), best[1] + 0.5 * (x[k][1] - best[1])};
                    fx[k] = fn(x[k][0], x[k][1]);
                }
                continue;
            }
        }
        x[idx[2]] = next;
        fx[idx[2]] = fnext;
    }
}

}  // namespace detail

/// Multistart derivative-free minimization of mu(S_2, L) over det-1 lattices.
/// Start 0 is Z^2 (p = 1, q = 0); further starts are drawn from the seeded
/// generator over p in [1/4, 4], q in [-2, 2].
inline Mu0SearchResult mu0_search_2d(const Mu0SearchConfig& cfg = {}) {
    std::vector<std::array<double, 2>> starts;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> up(0.25, 4.0), uq(-2.0, 2.0);
    for (std::size_t s = 0; s < cfg.starts; ++s) {
        if (s == 0) starts.push_back({1.0, 0.0});
        else starts.push_back({up(rng), uq(rng)});
    }
    std::vector<std::vector<Mu0Probe>> traces(starts.size());
    std::vector<char> exhausted(starts.size(), 0);
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, starts.size())));
    std::mutex m;
    std::size_t next = 0;
    auto worker = [&] {
        while (true) {
            std::size_t s;
            {
                std::lock_guard lock(m);
                if (next >= starts.size()) return;
                s = next++;
            }
            detail::Mu0Objective fn(cfg);
            bool ex = false;
            detail::nelder_mead(fn, starts[s], cfg.max_iters, cfg.deadline, ex);
            traces[s] = fn.trace();
            exhausted[s] = ex;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Mu0SearchResult res;
    const Mu0Probe* best = nullptr;
    for (std::size_t s = 0; s < traces.size(); ++s) {
        res.budget_exhausted = res.budget_exhausted || exhausted[s];
        for (const auto& pr : traces[s]) {
            res.trace.push_back(pr);
        }
    }
    for (const auto& pr : res.trace) {
        if (!best || pr.mu_hi < best->mu_hi ||
            (pr.mu_hi == best->mu_hi && (pr.p < best->p || (pr.p == best->p && pr.q < best->q))))
            best = &pr;
    }
    if (!best) throw Error(Errc::BudgetExhausted, "no probe evaluated");
    res.best_mu = best->mu_hi;
    res.best_mu_lo = best->mu_lo;
    res.best_p = best->p;
    res.best_q = best->q;
    res.best_lattice = unit_lattice(best->p, best->q);
    Interval mu = Interval::from_rational(res.best_mu);
    res.gamma_estimate = Interval::from_integer(1) / (mu * mu);
    return res;
}

}  // namespace frob
