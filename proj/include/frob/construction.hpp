#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frob/arith.hpp"
#include "frob/budget.hpp"
#include "frob/error.hpp"
#include "frob/frobenius.hpp"
#include "frob/lattice.hpp"
#include "frob/matrix.hpp"
#include "frob/polynomial.hpp"

namespace frob {

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

/// Lattice basis b_ij, target ratios alpha and the least d with d*b_ij and
/// d*alpha_j*b_ij integral.
struct ConstructionInput {
    LatticeSpec lattice;
    std::vector<Rational> alpha;
    Integer d;

    std::size_t n() const { return alpha.size() + 1; }
};

inline void check_alpha(const std::vector<Rational>& alpha) {
    if (alpha.empty()) throw Error(Errc::AlphaOutOfRange, "alpha must be non-empty");
    if (alpha.front() <= 0) throw Error(Errc::AlphaOutOfRange, "alpha_1 must be positive");
    if (alpha.back() > 1) throw Error(Errc::AlphaOutOfRange, "alpha_{N-1} must be at most 1");
    for (std::size_t i = 1; i < alpha.size(); ++i)
        if (alpha[i] < alpha[i - 1]) throw Error(Errc::AlphaOutOfRange, "alpha must be non-decreasing");
}

inline Integer compute_denominator(const LatticeSpec& lattice, const std::vector<Rational>& alpha) {
    check_alpha(alpha);
    if (alpha.size() != lattice.dim()) throw Error(Errc::DimensionMismatch, "alpha length must equal lattice dimension");
    Integer d = 1;
    const auto& b = lattice.basis();
    for (std::size_t i = 0; i < lattice.dim(); ++i)
        for (std::size_t j = 0; j < lattice.dim(); ++j) {
            d = lcm(d, b(i, j).get_den());
            d = lcm(d, Rational(alpha[j] * b(i, j)).get_den());
        }
    return d;
}

inline ConstructionInput make_construction_input(LatticeSpec lattice, std::vector<Rational> alpha) {
    Integer d = compute_denominator(lattice, alpha);
    return ConstructionInput{std::move(lattice), std::move(alpha), std::move(d)};
}

/// The (N-1) x N rational matrix B: basis columns followed by sum_k alpha_k b_ik.
inline Matrix<Rational> unperturbed_matrix(const ConstructionInput& in) {
    const std::size_t k = in.lattice.dim();
    const auto& b = in.lattice.basis();
    Matrix<Rational> m(k, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        Rational last = 0;
        for (std::size_t j = 0; j < k; ++j) {
            m(i, j) = b(i, j);
            last += in.alpha[j] * b(i, j);
        }
        m(i, k) = last;
    }
    return m;
}

struct ParametricMatrix {
    Matrix<IntPoly> entries;  // (N-1) x N, each entry of degree <= 1 in t
    std::vector<Integer> t_star;

    Matrix<Integer> evaluate(const Integer& t) const {
        Matrix<Integer> m(entries.rows(), entries.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entries(i, j).evaluate(t);
        return m;
    }
};

/// entry(i, j) = d b_ij t + [i = j] t*_i (j < N), entry(i, N) = d sum_k alpha_k b_ik t.
inline ParametricMatrix build_parametric_matrix(const ConstructionInput& in, const std::vector<Integer>& t_star) {
    const std::size_t k = in.lattice.dim();
    if (t_star.size() != k) throw Error(Errc::DimensionMismatch, "t_star length must equal N-1");
    const Matrix<Rational> b = unperturbed_matrix(in);
    ParametricMatrix pm{Matrix<IntPoly>(k, k + 1), t_star};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j <= k; ++j) {
            Rational slope = in.d * b(i, j);
            if (!is_integer(slope))
                throw Error(Errc::NonIntegerCoefficient, "d*B(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                             ") = " + to_string(slope) + " is not an integer");
            Integer constant = (j == i) ? t_star[i] : Integer(0);
            pm.entries(i, j) = IntPoly{constant, slope.get_num()};
        }
    return pm;
}

struct MinorSet {
    std::vector<IntPoly> M;   // M_i(t): minor omitting column i
    std::vector<Rational> B;  // B_i: the same minor of the unperturbed matrix
};

/// Exact minors by cofactor expansion, without identity or factor checks.
inline MinorSet compute_minors(const ParametricMatrix& pm, const ConstructionInput& in) {
    MinorSet ms;
    const Matrix<Rational> b = unperturbed_matrix(in);
    for (std::size_t i = 0; i < pm.entries.cols(); ++i) {
        ms.M.push_back(determinant_cofactor(pm.entries.without_column(i)));
        ms.B.push_back(determinant_cofactor(b.without_column(i)));
    }
    return ms;
}

struct MinorIdentities {
    bool leading_coefficients = true;  // [t^(N-1)] M_i = d^(N-1) B_i and deg M_i <= N-1
    bool last_minor_is_det = true;     // |B_N| = det L
    bool minors_follow_alpha = true;   // |B_i| = alpha_i |B_N|
    bool all() const { return leading_coefficients && last_minor_is_det && minors_follow_alpha; }
};

inline MinorIdentities verify_minor_identities(const MinorSet& ms, const ConstructionInput& in) {
    MinorIdentities id;
    const std::size_t k = in.lattice.dim();
    const Integer dk = pow(in.d, k);
    for (std::size_t i = 0; i <= k; ++i) {
        if (ms.M[i].degree() > static_cast<int>(k) || Rational(ms.M[i].coefficient(k)) != dk * ms.B[i])
            id.leading_coefficients = false;
    }
    const Rational bn = abs(ms.B[k]);
    if (bn != in.lattice.det_abs()) id.last_minor_is_det = false;
    for (std::size_t i = 0; i < k; ++i)
        if (abs(ms.B[i]) != in.alpha[i] * bn) id.minors_follow_alpha = false;
    return id;
}

/// Monic gcd over Q[t] of all minors.
inline RatPoly common_factor(const MinorSet& ms) {
    RatPoly g;
    for (const auto& m : ms.M) g = gcd(g, to_rational(m));
    return g;
}

/// Minors with all identities verified; throws CommonFactorFound when the
/// minors share a non-constant factor (the offsets t* are degenerate).
inline MinorSet minor_polynomials(const ParametricMatrix& pm, const ConstructionInput& in) {
    MinorSet ms = compute_minors(pm, in);
    if (!verify_minor_identities(ms, in).all()) throw std::logic_error("minor identities violated");
    RatPoly g = common_factor(ms);
    if (g.degree() >= 1) throw Error(Errc::CommonFactorFound, "minors share the factor " + to_string(g));
    return ms;
}

inline Integer gcd_at(const MinorSet& ms, const Integer& t) {
    Integer g = 0;
    for (const auto& m : ms.M) g = gcd(g, m.evaluate(t));
    return g;
}

/// Every t in [1, t_max] with gcd_i |M_i(t)| = 1 (exact evaluation).
inline std::vector<Integer> find_gcd_one(const MinorSet& ms, const Integer& t_max) {
    std::vector<Integer> out;
    for (Integer t = 1; t <= t_max; ++t)
        if (gcd_at(ms, t) == 1) out.push_back(t);
    return out;
}

/// A t0 such that 0 < |M_1(t)| < ... < |M_N(t)| for all t >= t0, from
/// Cauchy root bounds of the sign-normalized differences; nullopt when the
/// ordering never holds eventually.
inline std::optional<Integer> ordering_threshold(const MinorSet& ms) {
    auto sign = [](const IntPoly& p) { return p.leading() < 0 ? -1 : 1; };
    auto cauchy = [](const IntPoly& p) -> std::optional<Integer> {
        if (p.is_zero() || p.leading() <= 0) return std::nullopt;
        Rational worst = 0;
        for (int k = 0; k < p.degree(); ++k) {
            Rational r = abs(make_rational(p.coefficient(static_cast<std::size_t>(k)), p.leading()));
            if (r > worst) worst = r;
        }
        return ceil(worst) + 1;
    };
    Integer threshold = 1;
    for (std::size_t i = 0; i < ms.M.size(); ++i) {
        IntPoly pos = sign(ms.M[i]) < 0 ? IntPoly(-ms.M[i]) : ms.M[i];
        auto b = cauchy(pos);
        if (!b) return std::nullopt;
        if (*b > threshold) threshold = *b;
        if (i == 0) continue;
        IntPoly prev = sign(ms.M[i - 1]) < 0 ? IntPoly(-ms.M[i - 1]) : ms.M[i - 1];
        auto bd = cauchy(pos - prev);
        if (!bd) return std::nullopt;
        if (*bd > threshold) threshold = *bd;
    }
    return threshold;
}

struct ConstructionOutput {
    Integer t;
    std::vector<Integer> t_star;
    FrobeniusInstance a;
    Matrix<Integer> basis_rows;
    std::vector<Rational> alpha_t;
    std::vector<Rational> deviations;
    Rational aN_leading_ratio;  // a_N(t) / (det L d^(N-1) t^(N-1))
};

/// a_i(t) = |M_i(t)| with the basis of L_{a(t)} read off the first N-1
/// columns of M(t, t*). The sign convention is certified by checking every
/// basis row against the congruence and |det| = a_N(t).
inline ConstructionOutput construct_tuple(const ConstructionInput& in, const ParametricMatrix& pm,
                                          const MinorSet& ms, const Integer& t) {
    const std::size_t k = in.lattice.dim();
    std::vector<Integer> a;
    for (const auto& m : ms.M) a.push_back(abs(m.evaluate(t)));
    for (const auto& x : a)
        if (x == 0) throw Error(Errc::OrderingFailed, "zero minor at t=" + t.get_str());
    if (gcd_of(a) != 1) throw Error(Errc::GcdNotOne, "gcd " + gcd_of(a).get_str() + " at t=" + t.get_str());
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!(a[i - 1] < a[i])) {
            auto th = ordering_threshold(ms);
            throw Error(Errc::OrderingFailed, "a(t) not increasing at t=" + t.get_str() +
                                                  (th ? " (ordering holds from t=" + th->get_str() + ")" : ""));
        }
    const Matrix<Integer> full = pm.evaluate(t);
    Matrix<Integer> rows(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) rows(i, j) = full(i, j);
    const Integer& aN = a.back();
    for (std::size_t i = 0; i < k; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < k; ++j) s += a[j] * rows(i, j);
        if (mod(s, aN) != 0) throw Error(Errc::SignConventionFailed, "basis row " + std::to_string(i + 1) + " not in L_a(t)");
    }
    if (abs(determinant(rows)) != aN) throw Error(Errc::SignConventionFailed, "|det| of basis rows differs from a_N(t)");

    std::vector<Rational> alpha_t, dev;
    for (std::size_t i = 0; i < k; ++i) {
        alpha_t.push_back(make_rational(a[i], aN));
        dev.push_back(abs(alpha_t.back() - in.alpha[i]));
    }
    Rational lead = in.lattice.det_abs() * Rational(pow(in.d, k) * pow(t, k));
    return ConstructionOutput{t, pm.t_star, validate_instance(a), std::move(rows), std::move(alpha_t), std::move(dev),
                              Rational(aN) / lead};
}

inline ConstructionOutput construct_tuple(const ConstructionInput& in, const std::vector<Integer>& t_star,
                                          const Integer& t) {
    auto pm = build_parametric_matrix(in, t_star);
    auto ms = minor_polynomials(pm, in);
    return construct_tuple(in, pm, ms, t);
}

struct ConstructionSearch {
    Integer t_max = 10'000;
    Integer tstar_max = 8;
    std::size_t max_outputs = 64;
    Deadline deadline{};
};

struct ConstructionSearchResult {
    std::vector<ConstructionOutput> outputs;  // sorted by (t_star lexicographic, t)
    std::size_t degenerate_offsets = 0;
    std::size_t ordering_rejections = 0;
    bool budget_exhausted = false;
};

/// Exhaustive search over t* in [0, tstar_max]^(N-1) and t in [1, t_max].
inline ConstructionSearchResult search_constructions(const ConstructionInput& in, const ConstructionSearch& cfg,
                                                     std::optional<std::vector<Integer>> fixed_t_star = std::nullopt) {
    const std::size_t k = in.lattice.dim();
    ConstructionSearchResult res;
    std::vector<Integer> ts(k, 0);
    auto visit = [&](const std::vector<Integer>& t_star) -> bool {
        auto pm = build_parametric_matrix(in, t_star);
        MinorSet ms;
        try {
            ms = minor_polynomials(pm, in);
        } catch (const Error& e) {
            if (e.code() != Errc::CommonFactorFound) throw;
            ++res.degenerate_offsets;
            return true;
        }
        for (Integer t = 1; t <= cfg.t_max; ++t) {
            if (cfg.deadline.expired()) {
                res.budget_exhausted = true;
                return false;
            }
            if (gcd_at(ms, t) != 1) continue;
            try {
                res.outputs.push_back(construct_tuple(in, pm, ms, t));
            } catch (const Error& e) {
                if (e.code() != Errc::OrderingFailed && e.code() != Errc::SignConventionFailed) throw;
                ++res.ordering_rejections;
                continue;
            }
            if (res.outputs.size() >= cfg.max_outputs) return false;
        }
        return true;
    };
    if (fixed_t_star) {
        visit(*fixed_t_star);
        return res;
    }
    while (true) {
        if (!visit(ts)) break;
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (ts[pos] < cfg.tstar_max) {
                ++ts[pos];
                for (std::size_t r = pos + 1; r < k; ++r) ts[r] = 0;
                break;
            }
            if (pos == 0) return res;
        }
    }
    return res;
}

struct EnvelopeCheck {
    std::string name;
    Rational constant;  // C in |deviation(t)| <= C / t
    Integer t0;
    bool holds = true;
};

struct AsymptoticsReport {
    std::vector<EnvelopeCheck> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }
};

/// Slack on the O(1/t) constant fitted at the smallest t.
inline const Rational kEnvelopeSlack(2);

/// O(1/t) envelopes: C = slack * t0 * dev(t0) at the smallest t0, then
/// dev(t) <= C/t for every later t. Covers b_ij(t)/(d t) - b_ij,
/// alpha_i(t) - alpha_i and the a_N leading ratio.
inline AsymptoticsReport verify_asymptotics(const std::vector<ConstructionOutput>& seq, const ConstructionInput& in) {
    if (seq.size() < 3) throw Error(Errc::InsufficientSequence, "need at least three outputs");
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (!(seq[i - 1].t < seq[i].t)) throw Error(Errc::InsufficientSequence, "t values must increase");
    const std::size_t k = in.lattice.dim();
    AsymptoticsReport rep;
    auto envelope = [&](std::string name, auto deviation) {
        EnvelopeCheck c{std::move(name), 0, seq.front().t, true};
        c.constant = kEnvelopeSlack * Rational(c.t0) * deviation(seq.front());
        for (std::size_t s = 1; s < seq.size(); ++s)
            if (deviation(seq[s]) * Rational(seq[s].t) > c.constant) c.holds = false;
        rep.checks.push_back(std::move(c));
    };
    const auto& b = in.lattice.basis();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            envelope("b" + std::to_string(i + 1) + std::to_string(j + 1), [&, i, j](const ConstructionOutput& o) -> Rational {
                return abs(make_rational(o.basis_rows(i, j), in.d * o.t) - b(i, j));
            });
    for (std::size_t i = 0; i < k; ++i)
        envelope("alpha" + std::to_string(i + 1), [i](const ConstructionOutput& o) -> Rational { return o.deviations[i]; });
    envelope("aN_ratio", [](const ConstructionOutput& o) -> Rational { return abs(o.aN_leading_ratio - 1); });
    return rep;
}

}  // namespace frob
