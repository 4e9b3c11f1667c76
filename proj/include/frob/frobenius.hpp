#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frob/arith.hpp"
#include "frob/error.hpp"
#include "frob/interval.hpp"

namespace frob {

class FrobeniusInstance;
inline FrobeniusInstance validate_instance(std::span<const Integer> raw);

/// Strictly increasing, coprime tuple of N >= 2 positive integers.
class FrobeniusInstance {
public:
    std::size_t size() const { return a_.size(); }
    const Integer& operator[](std::size_t i) const { return a_[i]; }
    std::span<const Integer> values() const { return a_; }
    const Integer& smallest() const { return a_.front(); }
    const Integer& largest() const { return a_.back(); }

    Integer sum() const {
        Integer s = 0;
        for (const auto& x : a_) s += x;
        return s;
    }
    Integer product() const {
        Integer p = 1;
        for (const auto& x : a_) p *= x;
        return p;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < a_.size(); ++i) s += (i ? "," : "") + a_[i].get_str();
        return s;
    }

    friend bool operator==(const FrobeniusInstance&, const FrobeniusInstance&) = default;

private:
    explicit FrobeniusInstance(std::vector<Integer> a) : a_(std::move(a)) {}
    friend FrobeniusInstance validate_instance(std::span<const Integer> raw);

    std::vector<Integer> a_;
};

/// Checks the standing assumptions; never reorders the input.
inline FrobeniusInstance validate_instance(std::span<const Integer> raw) {
    if (raw.size() < 2) throw Error(Errc::TooFewElements, "need at least two integers");
    for (const auto& x : raw)
        if (x <= 0) throw Error(Errc::NonPositiveElement, "element " + x.get_str() + " is not positive");
    for (std::size_t i = 1; i < raw.size(); ++i)
        if (!(raw[i - 1] < raw[i]))
            throw Error(Errc::NotStrictlyIncreasing,
                        "a_" + std::to_string(i) + "=" + raw[i - 1].get_str() + " >= a_" + std::to_string(i + 1) +
                            "=" + raw[i].get_str());
    if (gcd_of(raw) != 1) throw Error(Errc::NotCoprime, "gcd is " + gcd_of(raw).get_str());
    return FrobeniusInstance(std::vector<Integer>(raw.begin(), raw.end()));
}

inline FrobeniusInstance validate_instance(std::initializer_list<long> raw) {
    std::vector<Integer> v;
    for (long x : raw) v.emplace_back(x);
    return validate_instance(std::span<const Integer>(v));
}

struct FrobeniusConfig {
    /// Largest modulus the residue-graph computation will allocate for.
    std::uint64_t max_modulus = 10'000'000;
};

namespace detail {

/// Dijkstra on the residue graph mod m: node r, edge r -> (r + w) mod m with
/// weight w for each generator w. dist[r] is the least non-negative
/// combination of the generators congruent to r.
template <class Dist>
std::vector<Dist> residue_shortest_paths(std::uint64_t m, std::span<const Integer> generators) {
    std::vector<Dist> weight;
    std::vector<std::uint64_t> step;
    for (const auto& g : generators) {
        if constexpr (std::is_same_v<Dist, Integer>) weight.push_back(g);
        else weight.push_back(static_cast<Dist>(to_u64(g)));
        step.push_back(to_u64(mod(g, from_u64(m))));
    }
    constexpr std::uint64_t kUnset = ~std::uint64_t{0};
    std::vector<Dist> dist(m);
    std::vector<std::uint64_t> settled(m, kUnset);  // kUnset: no tentative distance yet; 0/1 flags otherwise
    using Entry = std::pair<Dist, std::uint64_t>;
    auto cmp = [](const Entry& x, const Entry& y) { return x.first > y.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    dist[0] = Dist(0);
    settled[0] = 0;
    heap.emplace(Dist(0), 0);
    while (!heap.empty()) {
        auto [d, r] = heap.top();
        heap.pop();
        if (settled[r] == 1 || d != dist[r]) continue;
        settled[r] = 1;
        for (std::size_t j = 0; j < step.size(); ++j) {
            std::uint64_t s = r + step[j];
            if (s >= m) s -= m;
            Dist nd = d + weight[j];
            if (settled[s] == kUnset || (settled[s] == 0 && nd < dist[s])) {
                dist[s] = nd;
                settled[s] = 0;
                heap.emplace(nd, s);
            }
        }
    }
    return dist;
}

}  // namespace detail

/// Least non-negative combination of `generators` in every residue class
/// modulo `modulus`. Requires gcd(modulus, generators) = 1 for all classes to
/// be reachable.
inline std::vector<Integer> residue_minima(const Integer& modulus, std::span<const Integer> generators,
                                           const FrobeniusConfig& cfg = {}) {
    if (!fits_u64(modulus) || to_u64(modulus) > cfg.max_modulus)
        throw Error(Errc::BudgetExceeded,
                    "modulus " + modulus.get_str() + " exceeds limit " + std::to_string(cfg.max_modulus));
    const std::uint64_t m = to_u64(modulus);
    // Distances stay below m * max(generator); use native 128-bit arithmetic when that fits.
    bool small = true;
    for (const auto& g : generators)
        if (!fits_u64(g) || mpz_sizeinbase(g.get_mpz_t(), 2) > 62) small = false;
    std::vector<Integer> out;
    out.reserve(m);
    if (small) {
        for (unsigned __int128 d : detail::residue_shortest_paths<unsigned __int128>(m, generators)) {
            auto hi = static_cast<std::uint64_t>(d >> 64);
            auto lo = static_cast<std::uint64_t>(d);
            Integer v = from_u64(hi);
            v <<= 64;
            v += from_u64(lo);
            out.push_back(std::move(v));
        }
    } else {
        out = detail::residue_shortest_paths<Integer>(m, generators);
    }
    return out;
}

/// apery[r] = least m >= 0 with m = r (mod a_1) representable by a_2..a_N.
inline std::vector<Integer> apery_set(const FrobeniusInstance& inst, const FrobeniusConfig& cfg = {}) {
    auto gens = inst.values().subspan(1);
    return residue_minima(inst.smallest(), gens, cfg);
}

struct FrobeniusResult {
    Integer g;
    Integer f;
    std::vector<Integer> apery;
};

/// g = max Apery element - a_1 (g = -1 when a_1 = 1), f = g + sum a_i.
inline FrobeniusResult frobenius_number(const FrobeniusInstance& inst, const FrobeniusConfig& cfg = {}) {
    FrobeniusResult res;
    res.apery = apery_set(inst, cfg);
    Integer top = 0;
    for (const auto& w : res.apery)
        if (w > top) top = w;
    res.g = top - inst.smallest();
    res.f = res.g + inst.sum();
    return res;
}

/// Membership test against a precomputed Apery set.
inline bool is_representable(const Integer& n, const FrobeniusInstance& inst, const FrobeniusResult& res,
                             bool positive) {
    Integer m = positive ? Integer(n - inst.sum()) : n;
    if (m < 0) return false;
    Integer r = mod(m, inst.smallest());
    return res.apery[to_u64(r)] <= m;
}

inline bool is_representable(const Integer& n, const FrobeniusInstance& inst, bool positive,
                             const FrobeniusConfig& cfg = {}) {
    return is_representable(n, inst, frobenius_number(inst, cfg), positive);
}

struct RatioReport {
    Integer f;
    Integer product;
    Interval ratio;  // f / product^(1/(N-1))
};

inline RatioReport f_ratio(const FrobeniusInstance& inst, const Integer& f) {
    if (inst.size() < 3) throw Error(Errc::DimensionTooSmall, "normalized ratio needs N >= 3");
    RatioReport r{f, inst.product(), {}};
    r.ratio = Interval::from_integer(f) / rational_root(Rational(r.product), inst.size() - 1);
    return r;
}

inline RatioReport f_ratio(const FrobeniusInstance& inst, const FrobeniusConfig& cfg = {}) {
    return f_ratio(inst, frobenius_number(inst, cfg).f);
}

enum class BoundKind { Upper, Lower, Exact };

inline std::string_view bound_kind_name(BoundKind k) {
    switch (k) {
    case BoundKind::Upper: return "upper";
    case BoundKind::Lower: return "lower";
    case BoundKind::Exact: return "exact";
    }
    return "?";
}

struct BoundEntry {
    std::string name;
    std::string target;  // "g" or "f": the quantity the bound constrains
    BoundKind kind;
    std::variant<Rational, Interval> value;
    bool applicable = true;
    bool satisfied = true;
    std::string note;
};

struct BoundsReport {
    Integer g;
    Integer f;
    std::vector<BoundEntry> entries;

    /// Applicable lower bounds must hold; upper bounds are informational.
    bool lower_bounds_hold() const {
        for (const auto& e : entries)
            if (e.applicable && e.kind != BoundKind::Upper && !e.satisfied) return false;
        return true;
    }
    const BoundEntry* find(std::string_view name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

/// Evaluates the classical bound catalogue against the exact g and f.
inline BoundsReport bounds_report(const FrobeniusInstance& inst, const FrobeniusResult& res) {
    const std::size_t n = inst.size();
    const Integer& a1 = inst[0];
    const Integer& a2 = inst[1];
    const Integer& aN = inst.largest();
    const Integer sum = inst.sum();
    const Integer prod = inst.product();
    const Integer N(static_cast<unsigned long>(n));
    BoundsReport rep{res.g, res.f, {}};

    auto upper = [&](std::string name, const Integer& v, bool applicable, std::string note = {}) {
        rep.entries.push_back({std::move(name), "g", BoundKind::Upper, Rational(v), applicable,
                               applicable && res.g <= v, std::move(note)});
    };

    {
        Integer v = (a1 - 1) * (a2 - 1) - 1;
        rep.entries.push_back({"sharp", "g", BoundKind::Exact, Rational(v), n == 2, n == 2 && res.g == v, "N=2 only"});
    }
    {
        Integer q = floor_div(a1, N);
        upper("erdos_graham", 2 * aN * q - a1, q > 0, "floor(a_1/N) must be positive");
    }
    {
        Integer q = floor_div(aN, N);
        upper("selmer", 2 * inst[n - 2] * q - aN, q > 0 && n >= 3, "as-printed");
    }
    {
        Integer v = floor_div((a2 - 1) * (aN - 2), Integer(2)) - 1;
        upper("vitek", v, n >= 3);
    }
    if (n == 3) {
        Interval root = rational_root(Rational(prod * sum), 2);
        Interval v = (root - Rational(sum)) * Rational(1, 2);
        bool ok = !Interval::from_integer(res.g).certainly_greater(v);
        rep.entries.push_back({"beck_diaz_robins", "g", BoundKind::Upper, v, true, ok, {}});
    } else {
        rep.entries.push_back({"beck_diaz_robins", "g", BoundKind::Upper, Interval{}, false, false, "N=3 only"});
    }
    if (n == 3) {
        // g >= sqrt(3 a1 a2 a3) - sum  <=>  f^2 >= 3 a1 a2 a3 (f > 0).
        Interval v = rational_root(Rational(3 * prod), 2) - Rational(sum);
        bool ok = res.f > 0 && res.f * res.f >= 3 * prod;
        rep.entries.push_back({"davison", "g", BoundKind::Lower, v, true, ok, {}});
    } else {
        rep.entries.push_back({"davison", "g", BoundKind::Lower, Interval{}, false, false, "N=3 only"});
    }
    {
        // g >= ((N-1)! prod)^(1/(N-1)) - sum  <=>  f^(N-1) >= (N-1)! prod.
        Integer rhs = factorial(n - 1) * prod;
        Interval v = rational_root(Rational(rhs), n - 1) - Rational(sum);
        bool ok = res.f > 0 && pow(res.f, n - 1) >= rhs;
        rep.entries.push_back({"rodseth", "g", BoundKind::Lower, v, true, ok, {}});
    }
    {
        Integer rhs = factorial(n - 1) * prod;
        Interval v = n >= 3 ? rational_root(Rational(rhs), n - 1) : Interval{};
        bool ok = n >= 3 && res.f > 0 && pow(res.f, n - 1) > rhs;
        rep.entries.push_back({"corollary1_strict", "f", BoundKind::Lower, v, n >= 3, ok, "strict inequality"});
    }
    return rep;
}

inline BoundsReport bounds_report(const FrobeniusInstance& inst, const FrobeniusConfig& cfg = {}) {
    return bounds_report(inst, frobenius_number(inst, cfg));
}

}  // namespace frob
