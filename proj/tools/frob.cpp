#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frob/frob.hpp"

namespace {

using namespace frob;

struct Globals {
    bool json = false;
    bool csv = false;
    int digits = 12;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out = "-";

    Format format() const { return json ? Format::Json : csv ? Format::Csv : Format::Text; }
};

FrobeniusInstance instance_from(const std::string& text) { return validate_instance(parse_integer_list(text)); }

std::vector<Integer> optional_list(const std::string& text) {
    return text.empty() ? std::vector<Integer>{} : parse_integer_list(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius numbers, lattice coverings and the simplex covering constant"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    app.add_flag("--json", g.json, "Emit JSON");
    app.add_flag("--csv", g.csv, "Emit CSV");
    app.add_option("--digits", g.digits, "Significant digits for real values")->check(CLI::Range(1, 38));
    app.add_option("--seed", g.seed, "Seed for randomized operations");
    app.add_option("--threads", g.threads, "Worker threads (0: all cores)");

    std::string a_text;
    auto* compute = app.add_subcommand("compute", "Frobenius number g and f = g + sum a_i");
    compute->add_option("--a", a_text, "Comma-separated tuple a_1 < ... < a_N")->required();

    auto* bounds = app.add_subcommand("bounds", "Classical bounds evaluated against the exact g");
    bounds->add_option("--a", a_text, "Comma-separated tuple")->required();

    auto* lattice = app.add_subcommand("lattice", "Hermite basis of L_a");
    lattice->add_option("--a", a_text, "Comma-separated tuple")->required();

    std::string simplex_text, lattice_text, tol_text = "1/1048576";
    auto* mu = app.add_subcommand("mu", "Inhomogeneous minimum mu(S, L) in two dimensions");
    mu->add_option("--simplex", simplex_text, "Simplex weights w_1,w_2")->required();
    mu->add_option("--lattice", lattice_text, "Basis rows, e.g. \"1,0;0,1\"")->required();
    mu->add_option("--tol", tol_text, "Relative bracket width");

    std::size_t samples = 10'000;
    auto* kannan = app.add_subcommand("kannan", "Check f = mu(S_a, L_a)");
    kannan->add_option("--a", a_text, "Comma-separated tuple")->required();
    kannan->add_option("--samples", samples, "Random points for N >= 4");

    Mu0SearchConfig mcfg;
    auto* mu0 = app.add_subcommand("mu0", "Search for the optimal covering lattice of S_2");
    mu0->add_option("--starts", mcfg.starts, "Multistart count");
    mu0->add_option("--iters", mcfg.max_iters, "Nelder-Mead iterations per start");

    std::string basis_text, alpha_text, tstar_text;
    std::string tmax_text = "100", tstar_max_text = "3";
    std::size_t max_outputs = 64;
    auto* construct = app.add_subcommand("construct", "Tuples a(t) from a lattice and target ratios");
    construct->add_option("--basis", basis_text, "Basis rows of L")->required();
    construct->add_option("--alpha", alpha_text, "Target ratios alpha_1,...,alpha_{N-1}")->required();
    construct->add_option("--tmax", tmax_text, "Largest t");
    construct->add_option("--tstar", tstar_text, "Fixed offsets t*_1,...,t*_{N-1}");
    construct->add_option("--tstar-max", tstar_max_text, "Offset search range [0, tstar-max]");
    construct->add_option("--max-outputs", max_outputs, "Stop after this many tuples");

    std::string epsilon_text, denom_text = "1024";
    std::string density_tmax = "400";
    DensityRequest dreq;
    auto* density = app.add_subcommand("density", "Tuple close to alpha with near-optimal f ratio");
    density->add_option("--alpha", alpha_text, "Target ratios, strictly increasing in (0, 1)")->required();
    density->add_option("--epsilon", epsilon_text, "Tolerance")->required();
    density->add_option("--tmax", density_tmax, "Largest t");
    density->add_option("--tstar-max", tstar_max_text, "Offset search range");
    density->add_option("--denom-limit", denom_text, "Denominator limit when snapping the S_2 lattice");
    density->add_option("--starts", dreq.search.starts, "Lattice search starts (N = 3)");
    density->add_option("--iters", dreq.search.max_iters, "Lattice search iterations (N = 3)");

    RatioTableConfig tcfg;
    std::string amax_text = "60";
    bool trend = false;
    auto* table = app.add_subcommand("table", "Ratio f / (prod a_i)^(1/(N-1)) over many tuples");
    table->add_option("--n", tcfg.n, "Tuple length");
    table->add_option("--amax", amax_text, "Largest a_N");
    table->add_option("--count", tcfg.count, "Sample size for N >= 4");
    table->add_option("--out", g.out, "Output path (default stdout)");
    table->add_flag("--trend", trend, "Covering-constant bracket for N = 3..12 instead");

    CLI11_PARSE(app, argc, argv);

    try {
        const Deadline deadline = Deadline::from_env();
        FrobeniusConfig fcfg;
        Report r;
        Format fmt = g.format();
        if (*compute) {
            auto inst = instance_from(a_text);
            r = compute_report(inst, frobenius_number(inst, fcfg), g.digits);
        } else if (*bounds) {
            auto inst = instance_from(a_text);
            r = bounds_report_json(inst, bounds_report(inst, fcfg), g.digits);
        } else if (*lattice) {
            auto inst = instance_from(a_text);
            r = lattice_report(inst, lattice_from_tuple(inst));
        } else if (*mu) {
            SimplexSpec s(parse_rational_list(simplex_text));
            LatticeSpec l(parse_rational_matrix(lattice_text));
            if (s.dim() != 2 || l.dim() != 2) throw Error(Errc::DimensionMismatch, "mu is computed in two dimensions");
            r = mu_report(s, l, inhomogeneous_minimum_2d(s, l, parse_rational(tol_text)), g.digits);
        } else if (*kannan) {
            KannanOptions opt;
            opt.samples = samples;
            opt.seed = g.seed;
            r = kannan_report(kannan_check(instance_from(a_text), opt), g.digits);
        } else if (*mu0) {
            mcfg.seed = g.seed;
            mcfg.threads = g.threads;
            mcfg.deadline = deadline;
            r = mu0_report(mu0_search_2d(mcfg), g.digits);
        } else if (*construct) {
            auto in = make_construction_input(LatticeSpec(parse_rational_matrix(basis_text)), parse_rational_list(alpha_text));
            ConstructionSearch cfg;
            cfg.t_max = parse_integer(tmax_text);
            cfg.tstar_max = parse_integer(tstar_max_text);
            cfg.max_outputs = max_outputs;
            cfg.deadline = deadline;
            std::optional<std::vector<Integer>> fixed;
            if (!tstar_text.empty()) fixed = optional_list(tstar_text);
            auto res = search_constructions(in, cfg, fixed);
            std::optional<AsymptoticsReport> asym;
            if (fixed && res.outputs.size() >= 3) asym = verify_asymptotics(res.outputs, in);
            r = construct_report(in, res, asym);
        } else if (*density) {
            dreq.alpha = parse_rational_list(alpha_text);
            dreq.epsilon = parse_rational(epsilon_text);
            dreq.t_max = parse_integer(density_tmax);
            dreq.tstar_max = parse_integer(tstar_max_text);
            dreq.denom_limit = parse_integer(denom_text);
            dreq.search.seed = g.seed;
            dreq.search.threads = g.threads;
            dreq.deadline = deadline;
            r = density_report(density_experiment(dreq), g.digits);
        } else if (*table) {
            if (trend) {
                r = trend_report(mu0_trend(), g.digits);
            } else {
                tcfg.a_max = parse_integer(amax_text);
                tcfg.seed = g.seed;
                tcfg.threads = g.threads;
                r = ratio_table_report(ratio_table(tcfg), g.digits);
            }
            if (g.out != "-" && fmt == Format::Text) fmt = Format::Csv;
        }
        return emit_report(r, fmt, g.out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::IOFailure ? 1 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
