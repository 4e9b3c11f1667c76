#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "frob/arith.hpp"
#include "frob/construction.hpp"
#include "frob/covering.hpp"
#include "frob/error.hpp"
#include "frob/frobenius.hpp"
#include "frob/harness.hpp"
#include "frob/interval.hpp"
#include "frob/lattice.hpp"
#include "frob/mu0_search.hpp"

namespace frob {

using Json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// A command result: JSON document, flat table view and the assertion status
/// that decides the exit code.
struct Report {
    Json json = Json::object();
    Table table;
    bool ok = true;
};

enum class Format { Text, Json, Csv };

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_csv(std::ostream& os, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

/// Tables longer than this are summarized in text mode; use CSV for the rows.
inline constexpr std::size_t kTextTableRows = 64;

inline void write_columns(std::ostream& os, const Table& t) {
    std::vector<std::size_t> width(t.header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    };
    measure(t.header);
    for (const auto& r : t.rows) measure(r);
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += "  ";
            out += cells[i];
            if (i + 1 < cells.size() && i < width.size()) out.append(width[i] - cells[i].size(), ' ');
        }
        out.erase(out.find_last_not_of(' ') + 1);
        os << out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

inline void write_text(std::ostream& os, const Report& r) {
    bool table_shown = !r.table.rows.empty() && r.table.rows.size() <= kTextTableRows;
    for (const auto& [k, v] : r.json.items()) {
        if (v.is_string()) os << k << ": " << v.get<std::string>() << '\n';
        else if (v.is_array() && !v.empty() && v.front().is_object()) {
            if (!table_shown) os << k << ": " << v.size() << " entries (use --csv or --json)\n";
        } else os << k << ": " << v.dump() << '\n';
    }
    if (table_shown) {
        os << '\n';
        write_columns(os, r.table);
    }
}

/// Writes `r` to `path` ("-" for stdout). Returns 0 on success, 2 when an
/// assertion inside the results failed, 1 on IO failure.
inline int emit_report(const Report& r, Format fmt, const std::string& path = "-") {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (path != "-") {
        file.open(path);
        if (!file) {
            std::cerr << "error: IOFailure: cannot open " << path << '\n';
            return 1;
        }
        os = &file;
    }
    switch (fmt) {
    case Format::Json: *os << r.json.dump(2) << '\n'; break;
    case Format::Csv: write_csv(*os, r.table); break;
    case Format::Text: write_text(*os, r); break;
    }
    os->flush();
    if (!*os) {
        std::cerr << "error: IOFailure: write failed\n";
        return 1;
    }
    return r.ok ? 0 : 2;
}

inline Json rationals_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline Json integers_json(std::span<const Integer> v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

inline Json interval_json(const Interval& x, int digits) {
    return Json{{"value", x.str(digits)}, {"lo", x.lo_rational().get_d()}, {"hi", x.hi_rational().get_d()}};
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

inline std::string bound_value_str(const BoundEntry& e, int digits) {
    if (!e.applicable) return "";
    if (auto* q = std::get_if<Rational>(&e.value)) return to_string(*q);
    return std::get<Interval>(e.value).str(digits);
}

inline Report compute_report(const FrobeniusInstance& inst, const FrobeniusResult& fr, int digits) {
    Report r;
    r.json["instance"] = inst.str();
    r.json["g"] = fr.g.get_str();
    r.json["f"] = fr.f.get_str();
    r.table.header = {"a", "g", "f", "ratio"};
    std::string ratio;
    if (inst.size() >= 3) {
        ratio = f_ratio(inst, fr.f).ratio.str(digits);
        r.json["ratio"] = ratio;
    }
    r.table.rows.push_back({inst.str(), fr.g.get_str(), fr.f.get_str(), ratio});
    return r;
}

inline Report bounds_report_json(const FrobeniusInstance& inst, const BoundsReport& b, int digits) {
    Report r;
    r.json["instance"] = inst.str();
    r.json["g"] = b.g.get_str();
    r.json["f"] = b.f.get_str();
    Json entries = Json::array();
    r.table.header = {"name", "target", "kind", "value", "applicable", "satisfied", "note"};
    for (const auto& e : b.entries) {
        std::string value = bound_value_str(e, digits);
        entries.push_back(Json{{"name", e.name},
                               {"target", e.target},
                               {"kind", std::string(bound_kind_name(e.kind))},
                               {"value", e.applicable ? Json(value) : Json(nullptr)},
                               {"applicable", e.applicable},
                               {"satisfied", e.satisfied},
                               {"note", e.note}});
        r.table.rows.push_back({e.name, e.target, std::string(bound_kind_name(e.kind)), value,
                                e.applicable ? "true" : "false", e.satisfied ? "true" : "false", e.note});
    }
    r.json["entries"] = std::move(entries);
    r.json["lower_bounds_hold"] = b.lower_bounds_hold();
    r.ok = b.lower_bounds_hold();
    return r;
}

inline Report lattice_report(const FrobeniusInstance& inst, const LatticeSpec& l) {
    Report r;
    r.json["instance"] = inst.str();
    r.json["basis"] = to_string(l.basis());
    r.json["det"] = to_string(l.det_abs());
    r.table.header = {"row"};
    for (std::size_t i = 0; i < l.dim(); ++i) {
        std::vector<std::string> cells;
        for (std::size_t j = 0; j < l.dim(); ++j) cells.push_back(to_string(l.basis()(i, j)));
        r.table.rows.push_back({join(cells, " ")});
    }
    r.ok = l.det_abs() == Rational(inst.largest());
    return r;
}

inline Report mu_report(const SimplexSpec& s, const LatticeSpec& l, const MuInterval& mu, int digits) {
    Report r;
    r.json["simplex"] = rationals_json(s.weights());
    r.json["lattice"] = to_string(l.basis());
    r.json["mu_interval"] = Json::array({to_string(mu.lo), to_string(mu.hi)});
    r.json["mu"] = Interval::from_rational((mu.lo + mu.hi) / 2).str(digits);
    r.json["checks"] = mu.checks;
    if (mu.witness_at_lo) r.json["witness_at_lo"] = rationals_json({mu.witness_at_lo->x, mu.witness_at_lo->y});
    r.table.header = {"mu_lo", "mu_hi"};
    r.table.rows.push_back({to_string(mu.lo), to_string(mu.hi)});
    return r;
}

inline Report kannan_report(const KannanReport& k, int digits) {
    Report r;
    r.json["instance"] = k.instance.str();
    r.json["g"] = k.g.get_str();
    r.json["f"] = k.f.get_str();
    r.json["mode"] = k.exact_mode ? "exact" : "sampled";
    // With the check passed, covering at f and the residue-cost supremum pin mu to f.
    r.json["mu_interval"] = k.pass ? Json::array({k.f.get_str(), k.f.get_str()}) : Json(nullptr);
    r.json["sigma_below"] = to_string(k.sigma_below);
    if (k.exact_mode) {
        r.json["covered_at_f"] = k.at_f.covered;
        r.json["covered_below_f"] = k.below_f.covered;
        r.json["translates_at_f"] = k.at_f.translates_used;
    } else {
        r.json["samples"] = k.samples;
        r.json["uncovered_at_f"] = k.uncovered_at_f;
        r.json["inconclusive"] = k.inconclusive;
    }
    r.json["witness_below"] = k.witness_below ? rationals_json(*k.witness_below) : Json(nullptr);
    r.json["witness_confirmed"] = k.witness_confirmed;
    r.json["ratio"] = k.ratio.str(digits);
    r.json["ratio_via_chain"] = k.ratio_via_chain.str(digits);
    r.json["chain_consistent"] = k.chain_consistent;
    r.json["corollary1"] = k.corollary1;
    r.json["corollary2"] = k.corollary2 ? Json(*k.corollary2) : Json(nullptr);
    r.json["pass"] = k.pass;
    r.table.header = {"a", "g", "f", "mode", "ratio", "pass"};
    r.table.rows.push_back({k.instance.str(), k.g.get_str(), k.f.get_str(), k.exact_mode ? "exact" : "sampled",
                            k.ratio.str(digits), k.pass ? "true" : "false"});
    r.ok = k.pass;
    return r;
}

inline Report mu0_report(const Mu0SearchResult& s, int digits) {
    Report r;
    const Interval sqrt3 = Interval::sqrt3();
    r.json["best_mu"] = Interval::from_rational(s.best_mu).str(digits);
    r.json["best_mu_exact"] = to_string(s.best_mu);
    r.json["best_mu_lo"] = to_string(s.best_mu_lo);
    r.json["gamma_estimate"] = s.gamma_estimate.str(digits);
    r.json["best_lattice"] = to_string(s.best_lattice.basis());
    r.json["probes"] = s.trace.size();
    r.json["budget_exhausted"] = s.budget_exhausted;
    r.json["sqrt3"] = sqrt3.str(digits);
    Interval mu = Interval::from_rational(s.best_mu);
    r.json["excess_over_sqrt3"] = (mu - sqrt3).str(digits);
    r.table.header = {"p", "q", "mu_lo", "mu_hi"};
    for (const auto& p : s.trace) r.table.rows.push_back({to_string(p.p), to_string(p.q), to_string(p.mu_lo), to_string(p.mu_hi)});
    // The covering scale of a det-1 lattice can never drop below sqrt(3).
    r.ok = !mu.certainly_less(sqrt3);
    return r;
}

inline Json construction_json(const ConstructionOutput& o) {
    return Json{{"t", o.t.get_str()},
                {"t_star", integers_json(o.t_star)},
                {"a", integers_json(o.a.values())},
                {"basis_rows", to_string(o.basis_rows)},
                {"alpha_t", rationals_json(o.alpha_t)},
                {"deviations", rationals_json(o.deviations)},
                {"aN_leading_ratio", to_string(o.aN_leading_ratio)}};
}

inline Report construct_report(const ConstructionInput& in, const ConstructionSearchResult& res,
                               const std::optional<AsymptoticsReport>& asym) {
    Report r;
    r.json["basis"] = to_string(in.lattice.basis());
    r.json["alpha"] = rationals_json(in.alpha);
    r.json["d"] = in.d.get_str();
    Json outs = Json::array();
    r.table.header = {"t_star", "t", "a", "basis_rows", "max_deviation"};
    for (const auto& o : res.outputs) {
        outs.push_back(construction_json(o));
        Rational worst = 0;
        for (const auto& d : o.deviations)
            if (d > worst) worst = d;
        std::vector<std::string> ts;
        for (const auto& x : o.t_star) ts.push_back(x.get_str());
        r.table.rows.push_back({join(ts, " "), o.t.get_str(), o.a.str(), to_string(o.basis_rows), to_string(worst)});
    }
    r.json["outputs"] = std::move(outs);
    r.json["degenerate_offsets"] = res.degenerate_offsets;
    r.json["ordering_rejections"] = res.ordering_rejections;
    r.json["budget_exhausted"] = res.budget_exhausted;
    if (asym) {
        Json checks = Json::array();
        for (const auto& c : asym->checks)
            checks.push_back(Json{{"name", c.name}, {"C", to_string(c.constant)}, {"t0", c.t0.get_str()}, {"holds", c.holds}});
        r.json["asymptotics"] = Json{{"pass", asym->pass()}, {"checks", std::move(checks)}};
        r.ok = asym->pass();
    }
    return r;
}

/// Re-verifies the density inequalities from the tuple before reporting.
inline Report density_report(const DensityResult& d, int digits) {
    Report r;
    const bool verified = verify_density(d);
    Rational worst = 0;
    for (const auto& x : d.deviations)
        if (x > worst) worst = x;
    r.json["alpha"] = rationals_json(d.alpha);
    r.json["epsilon"] = to_string(d.epsilon);
    r.json["tuple"] = integers_json(d.tuple.values());
    r.json["g"] = d.g.get_str();
    r.json["f"] = d.f.get_str();
    r.json["t"] = d.t.get_str();
    r.json["t_star"] = integers_json(d.t_star);
    r.json["deviations"] = rationals_json(d.deviations);
    r.json["max_deviation"] = to_string(worst);
    r.json["ratio"] = d.ratio.str(digits);
    r.json["mu_reference"] = d.mu_reference.str(digits);
    r.json["lattice_used"] = to_string(d.lattice_used.basis());
    r.json["search_best_mu"] = d.search_best_mu ? Json(Interval::from_rational(*d.search_best_mu).str(digits)) : Json(nullptr);
    r.json["candidates"] = d.candidates;
    r.json["verified"] = verified;
    r.table.header = {"tuple", "t", "max_deviation", "ratio", "mu_reference", "verified"};
    r.table.rows.push_back({d.tuple.str(), d.t.get_str(), to_string(worst), d.ratio.str(digits), d.mu_reference.str(digits),
                            verified ? "true" : "false"});
    r.ok = verified;
    return r;
}

/// Bound columns are the applicable catalogue entries of the first row's N.
inline Report ratio_table_report(const RatioTable& t, int digits) {
    Report r;
    static const std::vector<std::string> bound_names = {"erdos_graham", "selmer", "vitek", "beck_diaz_robins"};
    r.table.header.clear();
    for (std::size_t i = 1; i <= t.n; ++i) r.table.header.push_back("a" + std::to_string(i));
    for (const char* h : {"g", "f", "ratio", "corollary1_margin"}) r.table.header.push_back(h);
    if (t.n == 3) r.table.header.push_back("davison_margin");
    for (const auto& b : bound_names) {
        r.table.header.push_back(b);
        r.table.header.push_back(b + "_ok");
    }
    r.table.header.push_back("lower_ok");
    for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& x : row.a.values()) cells.push_back(x.get_str());
        cells.push_back(row.g.get_str());
        cells.push_back(row.f.get_str());
        cells.push_back(row.ratio.str(digits));
        cells.push_back(row.corollary1_margin.get_str());
        if (t.n == 3) cells.push_back(row.davison_margin->get_str());
        for (const auto& b : bound_names) {
            const BoundEntry* e = row.bounds.find(b);
            cells.push_back(e ? bound_value_str(*e, digits) : "");
            cells.push_back(e && e->applicable ? (e->satisfied ? "true" : "false") : "");
        }
        cells.push_back(row.lower_ok ? "true" : "false");
        r.table.rows.push_back(std::move(cells));
    }
    r.json["n"] = t.n;
    r.json["a_max"] = t.a_max.get_str();
    r.json["rows"] = t.rows.size();
    r.json["lower_bound"] = t.lower.str(digits);
    if (t.argmin) {
        const auto& m = t.rows[*t.argmin];
        r.json["min_ratio"] = m.ratio.str(digits);
        r.json["argmin"] = integers_json(m.a.values());
    }
    r.json["all_ok"] = t.all_ok;
    r.ok = t.all_ok;
    return r;
}

inline Report trend_report(const std::vector<TrendRow>& rows, int digits) {
    Report r;
    const Interval einv = Interval::from_integer(1) / Interval::e();
    r.table.header = {"N", "lower", "upper", "lower_over_dim", "e_inverse"};
    Json arr = Json::array();
    for (const auto& t : rows) {
        r.table.rows.push_back({std::to_string(t.n), t.bounds.lower.str(digits), to_string(t.bounds.upper),
                                t.bounds.lower_over_dim.str(digits), einv.str(digits)});
        arr.push_back(Json{{"N", t.n},
                           {"lower", t.bounds.lower.str(digits)},
                           {"upper", to_string(t.bounds.upper)},
                           {"lower_over_dim", t.bounds.lower_over_dim.str(digits)}});
    }
    r.json["e_inverse"] = einv.str(digits);
    r.json["trend"] = std::move(arr);
    return r;
}

}  // namespace frob
