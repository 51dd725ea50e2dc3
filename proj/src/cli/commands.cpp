#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qhagg/cli.hpp"
#include "qhagg/construct.hpp"
#include "qhagg/verify.hpp"

namespace qhagg::cli {

namespace {

struct SpecOptions {
    std::string fn;
    std::string alpha;
    std::string beta;
    std::string g;
    std::string h;
    std::vector<std::string> params;
    std::vector<std::string> triple;
    std::vector<std::string> expr2d;
    std::string spec_file;
    std::string table;
    bool raw = false;

    void attach(CLI::App& cmd) {
        auto* group = cmd.add_option_group("function", "Function to operate on (exactly one)");
        group->add_option("--fn", fn, "Catalog entry (see `catalog`)");
        group->add_option("--triple", triple, "Generator triple: f=EXPR g=EXPR h=EXPR")
            ->expected(3);
        group->add_option("--expr2d", expr2d,
                          "combine=min|max|product|mean|bounded_sum u=EXPR v=EXPR")
            ->expected(3);
        group->add_option("--spec", spec_file, "JSON function-spec file");
        group->add_option("--table", table, "Grid CSV written by `grid`");
        group->require_option(1);

        cmd.add_option("--alpha", alpha, "alpha for --fn flat");
        cmd.add_option("--beta", beta, "beta for --fn flat");
        cmd.add_option("--g", g, "g expression for --fn boundary_only");
        cmd.add_option("--h", h, "h expression for --fn boundary_only");
        cmd.add_option("--param", params, "Extra catalog parameter key=value");
        cmd.add_flag("--raw", raw, "Evaluate the bare triple formula without validating it");
    }

    [[nodiscard]] FunctionSpec resolve() const {
        if (!fn.empty()) {
            CatalogRef ref{fn, {}};
            auto put = [&ref](const char* key, const std::string& value) {
                if (!value.empty()) {
                    ref.params[key] = value;
                }
            };
            put("alpha", alpha);
            put("beta", beta);
            put("g", g);
            put("h", h);
            for (const auto& p : params) {
                const auto eq = p.find('=');
                if (eq == std::string::npos || eq == 0) {
                    throw SpecError("--param expects key=value, got '" + p + "'");
                }
                ref.params[p.substr(0, eq)] = p.substr(eq + 1);
            }
            return ref;
        }
        if (!alpha.empty() || !beta.empty() || !g.empty() || !h.empty() || !params.empty()) {
            throw SpecError("--alpha/--beta/--g/--h/--param only apply to --fn");
        }
        if (!triple.empty()) {
            return parse_triple_tokens(triple);
        }
        if (!expr2d.empty()) {
            return parse_expr2d_tokens(expr2d);
        }
        if (!spec_file.empty()) {
            return load_spec_file(spec_file);
        }
        return TableSpec{table};
    }
};

double parse_number(const std::string& text, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw SpecError(std::string(what) + ": not a number: '" + text + "'");
    }
    return v;
}

std::string fmt(double v) { return format_shortest(v); }

int emit_result(std::ostream& out, bool passed, double max_residual) {
    out << "RESULT " << (passed ? "pass" : "fail") << " max_residual=" << fmt(max_residual)
        << '\n';
    return passed ? kExitPass : kExitFail;
}

void print_aggregation(std::ostream& out, const AggregationReport& r) {
    if (r.passed) {
        out << "aggregation: pass\n";
        return;
    }
    const auto& w = *r.witness;
    out << "aggregation: fail: " << w.condition << " at (" << fmt(w.x) << ", " << fmt(w.y) << ")";
    if (w.x != w.x_next || w.y != w.y_next) {
        out << " vs (" << fmt(w.x_next) << ", " << fmt(w.y_next) << ")";
    }
    out << " by " << fmt(w.amount) << '\n';
}

void print_triple(std::ostream& out, const TripleReport& r) {
    for (const auto& c : r.conditions) {
        out << "triple: " << c.name << ": " << (c.passed ? "pass" : "fail");
        if (!c.passed) {
            if (c.witness) {
                out << " at (" << fmt(c.witness->first) << ", " << fmt(c.witness->second) << ")";
            }
            if (!c.detail.empty()) {
                out << " (" << c.detail << ")";
            }
        }
        out << '\n';
    }
}

struct CheckOptions {
    std::string mode;
    std::string phi;
    std::string phi_b;
    std::string psi;
    std::size_t grid = kDefaultGridResolution;
    std::optional<double> tol;
};

int run_check(const SpecOptions& spec_opts, const CheckOptions& opts, std::ostream& out) {
    const FunctionSpec spec = spec_opts.resolve();
    const Grid grid(opts.grid);
    const auto* triple_spec = std::get_if<TripleSpec>(&spec);

    if (opts.mode == "agg") {
        const double tol = opts.tol.value_or(kClosedFormTol);
        bool passed = true;
        std::optional<AggregationFunction> a;
        if (triple_spec) {
            BuildOptions raw{true};
            a = build_function(spec, raw);
            GeneratorTriple t{unit::parse(triple_spec->f, UnitFlags::bijection()),
                              unit::parse(triple_spec->g), unit::parse(triple_spec->h)};
            const auto report = validate_triple(t, grid);
            print_triple(out, report);
            passed = report.passed();
        } else {
            a = build_function(spec, BuildOptions{spec_opts.raw});
        }
        out << "function: " << a->name() << '\n';
        out << "grid: n=" << grid.resolution() << " tol=" << fmt(tol) << '\n';
        const auto r = check_aggregation(*a, grid, tol);
        print_aggregation(out, r);
        return emit_result(out, passed && r.passed, r.max_violation);
    }

    const auto a = build_function(spec, BuildOptions{spec_opts.raw});
    out << "function: " << a.name() << '\n';

    if (opts.mode == "qh") {
        if (opts.phi.empty() || opts.psi.empty()) {
            throw SpecError("--mode qh needs --phi and --psi");
        }
        const PsiSpec psi = parse_psi(opts.psi);
        const PhiSpec phi = parse_phi(opts.phi, opts.phi_b);
        const double tol =
            opts.tol.value_or(phi.has_closed_form_inverse() ? kClosedFormTol : kBisectionTol);
        out << "grid: n=" << grid.resolution() << " tol=" << fmt(tol) << '\n';
        out << "psi: " << to_string(psi) << '\n';
        out << "phi: " << phi.name() << " b=" << fmt(phi.b().value()) << '\n';
        const auto r = check_quasi_homogeneity(a, phi, psi, grid, tol);
        out << "quasi-homogeneity: " << (r.passed ? "pass" : "fail") << " over " << r.points
            << " points\n";
        if (r.witness) {
            const auto& w = *r.witness;
            out << "witness: lambda=" << fmt(w.lambda) << " x=" << fmt(w.x) << " y=" << fmt(w.y)
                << " lhs=" << fmt(w.lhs) << " rhs=" << fmt(w.rhs) << " residual=" << fmt(w.residual)
                << '\n';
        }
        return emit_result(out, r.passed, r.max_residual);
    }

    if (opts.mode == "classify") {
        const double tol = opts.tol.value_or(kBisectionTol);
        out << "grid: n=" << grid.resolution() << " tol=" << fmt(tol) << '\n';
        const auto report = classify(a, grid, tol);
        out << report.summary() << '\n';
        double max_residual = 0.0;
        for (const auto& [key, value] : report.diagnostics) {
            out << "diagnostic: " << key << "=" << fmt(value) << '\n';
            if (key != "diagonal.max_jump") {
                max_residual = std::max(max_residual, value);
            }
        }
        if (const auto* nq = std::get_if<NotQuasiHomogeneous>(&report.verdict)) {
            max_residual = std::max(max_residual, nq->residual);
        }
        return emit_result(out, report.quasi_homogeneous(), max_residual);
    }

    throw SpecError("--mode must be agg, qh or classify");
}

}  // namespace

PsiSpec parse_psi(const std::string& text) {
    if (text == "step0") {
        return PsiStepAtZero{};
    }
    if (text == "step1") {
        return PsiStepAtOne{};
    }
    constexpr std::string_view prefix = "power:c=";
    if (text.starts_with(prefix)) {
        const double c = parse_number(text.substr(prefix.size()), "--psi");
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw SpecError("--psi: exponent must be positive");
        }
        return PsiPower{c};
    }
    throw SpecError("--psi must be power:c=<num>, step0 or step1");
}

PhiSpec parse_phi(const std::string& text, const std::string& b_text) {
    std::optional<ExtNonneg> b;
    if (!b_text.empty()) {
        if (b_text == "inf") {
            b = ExtNonneg::infinity();
        } else {
            const double v = parse_number(b_text, "--phi-b");
            if (!(v > 0.0)) {
                throw SpecError("--phi-b must be positive or inf");
            }
            b = ExtNonneg(v);
        }
    }
    Expr expr = [&] {
        try {
            return parse_expr(text);
        } catch (const ParseError& e) {
            throw SpecError(std::string("--phi: ") + e.what());
        }
    }();
    try {
        return PhiSpec::from_expr(expr, b);
    } catch (const InvalidFunction& e) {
        throw ValidationError(std::string("--phi: ") + e.what());
    } catch (const EvalError& e) {
        throw ValidationError(std::string("--phi: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct, verify and classify quasi-homogeneous aggregation functions", "qhagg"};
    // `--h` names a boundary section, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in aggregation functions");

    SpecOptions eval_spec;
    double eval_x = 0.0;
    double eval_y = 0.0;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate A(x, y)");
    eval_spec.attach(*eval_cmd);
    eval_cmd->add_option("--x", eval_x, "First argument in [0,1]")->required();
    eval_cmd->add_option("--y", eval_y, "Second argument in [0,1]")->required();

    SpecOptions check_spec;
    CheckOptions check_opts;
    auto* check_cmd = app.add_subcommand(
        "check", "Check aggregation axioms, quasi-homogeneity, or classify");
    check_spec.attach(*check_cmd);
    check_cmd->add_option("--mode", check_opts.mode, "agg | qh | classify")
        ->required()
        ->check(CLI::IsMember({"agg", "qh", "classify"}));
    check_cmd->add_option("--phi", check_opts.phi, "phi as an expression (mode qh)");
    check_cmd->add_option("--phi-b", check_opts.phi_b,
                          "Endpoint b = phi(1): a number, or inf for unbounded phi");
    check_cmd->add_option("--psi", check_opts.psi, "power:c=<num> | step0 | step1 (mode qh)");
    check_cmd->add_option("--grid", check_opts.grid, "Grid resolution n (n+1 points)")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--tol", check_opts.tol,
                          "Tolerance (default 1e-9 closed form, 1e-6 with bisection)");

    SpecOptions grid_spec;
    std::size_t grid_n = kDefaultGridResolution;
    std::string grid_out = "-";
    auto* grid_cmd = app.add_subcommand("grid", "Dump A on the (n+1)^2 grid as CSV");
    grid_spec.attach(*grid_cmd);
    grid_cmd->add_option("--n", grid_n, "Grid resolution")->check(CLI::PositiveNumber);
    grid_cmd->add_option("--out", grid_out, "Output path (- for stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (catalog_cmd->parsed()) {
            for (const auto& entry : catalog_entries()) {
                out << entry.name;
                for (const auto& p : entry.params) {
                    out << " --" << p << " <value>";
                }
                out << "\n    " << entry.description << '\n';
            }
            return kExitPass;
        }
        if (eval_cmd->parsed()) {
            if (!(eval_x >= 0.0 && eval_x <= 1.0 && eval_y >= 0.0 && eval_y <= 1.0)) {
                throw SpecError("--x and --y must lie in [0,1]");
            }
            const auto a = build_function(eval_spec.resolve(), BuildOptions{eval_spec.raw});
            out << fmt(a(eval_x, eval_y)) << '\n';
            return kExitPass;
        }
        if (check_cmd->parsed()) {
            return run_check(check_spec, check_opts, out);
        }
        if (grid_cmd->parsed()) {
            const auto a = build_function(grid_spec.resolve(), BuildOptions{grid_spec.raw});
            if (grid_out == "-") {
                write_grid_csv(out, a, grid_n);
                return kExitPass;
            }
            std::ofstream file(grid_out);
            if (!file) {
                throw SpecError("cannot open '" + grid_out + "' for writing");
            }
            write_grid_csv(file, a, grid_n);
            file.flush();
            if (!file) {
                throw SpecError("write to '" + grid_out + "' failed");
            }
            return kExitPass;
        }
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace qhagg::cli
