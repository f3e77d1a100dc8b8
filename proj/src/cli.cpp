#include "evcalc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "evcalc/dempster.hpp"
#include "evcalc/errors.hpp"
#include "evcalc/io.hpp"
#include "evcalc/multivariate.hpp"
#include "evcalc/oracle.hpp"
#include "evcalc/tpm.hpp"
#include "evcalc/transforms.hpp"

namespace evcalc {

namespace {

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::parse_error:
        case Errc::unknown_label:
        case Errc::duplicate_subset:
            return 2;
        default:
            return 1;
    }
}

std::string joined_labels(const FramePtr& frame) {
    std::string out;
    for (const std::string& label : frame->labels()) {
        if (!out.empty()) out += ' ';
        out += label;
    }
    return out;
}

void print_doc_header(std::ostream& out, const EvidenceDoc& doc) {
    out << "# frame: " << joined_labels(doc.mass.frame()) << "\n";
    if (doc.product.has_value()) {
        for (const Variable& v : doc.product->variables()) {
            out << "# var " << v.name << ":";
            for (const std::string& d : v.domain) out << ' ' << d;
            out << "\n";
        }
    }
    if (std::abs(doc.mass.one_total() - 1.0) > 1e-12) {
        out << "# ONE: " << format_decimal(doc.mass.one_total()) << "\n";
    }
    if (!doc.mass.all_nonnegative()) out << "# pseudo-bpa (contains negative masses)\n";
}

void print_candidates(std::ostream& out, const Frame& frame, const char* side,
                      SubsetIndex subset, const std::vector<CandidateMassVector>& cands) {
    out << "# candidates " << frame.format_subset(subset) << " " << side << ":";
    for (const CandidateMassVector& c : cands) {
        out << " (";
        for (std::size_t i = 0; i < c.masses.size(); ++i) {
            if (i != 0) out << ",";
            out << format_decimal(c.masses[i]);
        }
        out << ")";
    }
    out << "\n";
}

struct Global {
    int cap = 6;
    double tol = 1e-9;
    bool tol_given = false;
    int precision = 0;
    bool dump_candidates = false;
    bool skip_zeros = false;

    TpmConfig tpm() const {
        TpmConfig cfg;
        cfg.carrier_cap = cap;
        cfg.record_candidates = dump_candidates;
        return cfg;
    }
};

int cmd_show(std::ostream& out, const Global& g, const std::string& file) {
    const EvidenceDoc doc = load_evidence_doc(file);
    print_doc_header(out, doc);
    out << render_table(doc.mass, g.precision, g.skip_zeros);
    return 0;
}

int cmd_transform(std::ostream& out, const Global& g, const std::string& file,
                  const std::string& kind) {
    const MassFunction m = load_evidence(file);
    std::vector<double> values;
    if (kind == "bel") {
        values = mass_to_belief(m).values;
    } else if (kind == "pl") {
        values = mass_to_plausibility(m).values;
    } else {
        values = mass_to_commonality(m).values;
    }
    out << "# kind: " << kind << "\n";
    out << "# frame: " << joined_labels(m.frame()) << "\n";
    out << render_value_table(m.frame(), values, g.precision, g.skip_zeros);
    return 0;
}

int cmd_combine(std::ostream& out, const Global& g, const std::string& rule,
                const std::vector<std::string>& files, bool assoc_check) {
    std::vector<MassFunction> operands;
    operands.reserve(files.size());
    for (const std::string& f : files) operands.push_back(load_evidence(f));
    for (std::size_t i = 1; i < operands.size(); ++i) {
        if (!same_frame(operands[0].frame(), operands[i].frame())) {
            fail(Errc::frame_mismatch, "'" + files[i] + "' uses a different frame than '" +
                                           files[0] + "'");
        }
    }
    out << "# rule: " << rule << "\n";
    const TpmConfig cfg = g.tpm();
    MassFunction acc = operands[0];
    for (std::size_t i = 1; i < operands.size(); ++i) {
        const std::string step =
            operands.size() > 2 ? " step " + std::to_string(i) + " " : " ";
        if (rule == "dempster") {
            auto [combined, rep] = dempster_combine(acc, operands[i]);
            out << "#" << step << "conflict: " << format_decimal(rep.conflict_mass) << "\n";
            out << "#" << step << "normalizer: " << format_decimal(rep.normalizer) << "\n";
            acc = std::move(combined);
        } else {
            CombinationReport rep = tpm_combine(acc, operands[i], cfg);
            out << "#" << step << "normalizer: " << format_decimal(rep.normalizer) << "\n";
            for (const std::string& w : rep.warnings) {
                out << "#" << step << "warning: " << w << "\n";
            }
            if (g.dump_candidates) {
                const auto len = static_cast<SubsetIndex>(rep.frame->subset_count());
                for (SubsetIndex s = 1; s < len; ++s) {
                    print_candidates(out, *rep.frame, "lhs", s, rep.candidates_a[s]);
                    print_candidates(out, *rep.frame, "rhs", s, rep.candidates_b[s]);
                }
            }
            acc = std::move(rep.combined_mass);
        }
    }
    out << "# frame: " << joined_labels(acc.frame()) << "\n";
    out << render_table(acc, g.precision, g.skip_zeros);
    if (assoc_check) {
        const Rule r = rule == "dempster" ? Rule::dempster : Rule::tpm;
        try {
            out << "# assoc-check max deviation: "
                << format_decimal(fold_deviation(operands, r, cfg)) << "\n";
        } catch (const Error& e) {
            out << "# assoc-check: not comparable (" << e.what() << ")\n";
        }
    }
    return 0;
}

int cmd_condition(std::ostream& out, const Global& g, const std::string& file,
                  const std::string& on) {
    const MassFunction m = load_evidence(file);
    const SubsetIndex event = parse_subset_text(*m.frame(), on);
    const MassFunction conditioned = condition(m, event);
    out << "# conditioned on: " << m.frame()->format_subset(event) << "\n";
    out << "# frame: " << joined_labels(m.frame()) << "\n";
    out << render_table(conditioned, g.precision, g.skip_zeros);
    return 0;
}

int cmd_marginalize(std::ostream& out, const Global& g, const std::string& file,
                    const std::string& vars_csv) {
    const EvidenceDoc doc = load_evidence_doc(file);
    if (!doc.product.has_value()) {
        fail(Errc::invalid_argument,
             "'" + file + "' declares no variables ('var <name>: ...' lines)");
    }
    std::vector<std::string> vars;
    std::size_t start = 0;
    while (start <= vars_csv.size()) {
        const std::size_t comma = vars_csv.find(',', start);
        const std::string tok = vars_csv.substr(
            start, comma == std::string::npos ? comma : comma - start);
        std::string trimmed;
        for (char c : tok) {
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        }
        if (!trimmed.empty()) vars.push_back(trimmed);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (vars.empty()) fail(Errc::invalid_argument, "--vars lists no variable names");
    ProductFrame projected(std::vector<Variable>{Variable{"placeholder", {"x"}}});
    const MassFunction marginal = marginalize(*doc.product, doc.mass, vars, &projected);
    out << "# frame: " << joined_labels(projected.frame()) << "\n";
    for (const Variable& v : projected.variables()) {
        out << "# var " << v.name << ":";
        for (const std::string& d : v.domain) out << ' ' << d;
        out << "\n";
    }
    out << render_table(marginal, g.precision, g.skip_zeros);
    return 0;
}

int cmd_verify(std::ostream& out, const Global& g, const std::string& law_s,
               const std::string& rule_s, int trials, std::uint64_t seed, int size,
               double density, const std::string& out_dir) {
    Law law = Law::commutativity;
    if (law_s == "associativity") law = Law::associativity;
    if (law_s == "duality") law = Law::duality;
    if (law_s == "round-trip") law = Law::round_trip;
    const Rule rule = rule_s == "dempster" ? Rule::dempster : Rule::tpm;

    CheckConfig cfg;
    cfg.tolerance = g.tol_given ? g.tol : 0.0;
    cfg.focal_density = density;
    cfg.tpm = g.tpm();
    cfg.tpm.record_candidates = false;
    cfg.emit_dir = std::filesystem::path(out_dir);

    const LawCheckReport rep = check_law(law, rule, trials, seed, size, cfg);
    out << "law: " << law_name(rep.law) << "\n";
    out << "rule: " << rule_name(rep.rule) << "\n";
    out << "generator: " << rep.generator << "\n";
    out << "seed: " << rep.seed << "\n";
    out << "frame size: " << rep.frame_size << "\n";
    out << "trials: " << rep.trials << "\n";
    out << "completed: " << rep.completed << "\n";
    out << "skipped: " << rep.skipped << "\n";
    out << "max deviation: " << format_decimal(rep.max_deviation) << "\n";
    out << "tolerance: " << format_decimal(rep.tolerance) << "\n";
    out << "status: " << (rep.violated ? "violated" : "ok") << "\n";
    if (rep.counterexample.has_value()) {
        const Counterexample& ce = *rep.counterexample;
        out << "counterexample trial: " << ce.trial << "\n";
        out << "counterexample deviation: " << format_decimal(ce.deviation) << "\n";
        out << "worst subset: "
            << ce.operands.front().frame()->format_subset(ce.worst_subset) << "\n";
        for (const auto& p : rep.emitted_files) out << "emitted: " << p.string() << "\n";
    }
    return 0;
}

int cmd_oracle(std::ostream& out, const Global& g, const std::string& file_a,
               const std::string& file_b, const std::string& subset_s, double resolution) {
    const MassFunction a = load_evidence(file_a);
    const MassFunction b = load_evidence(file_b);
    if (!same_frame(a.frame(), b.frame())) {
        fail(Errc::frame_mismatch, "'" + file_b + "' uses a different frame than '" + file_a +
                                       "'");
    }
    const SubsetIndex carrier =
        subset_s.empty() ? a.frame()->full_set() : parse_subset_text(*a.frame(), subset_s);
    const TpmConfig cfg = g.tpm();
    const RestrictedPlausibility ra = restrict_to(mass_to_plausibility(a), carrier);
    const RestrictedPlausibility rb = restrict_to(mass_to_plausibility(b), carrier);

    const double bilinear = bilinear_value(ra, rb, cfg);
    const double alternating = oracle_alternating_max(ra, rb, cfg);
    std::optional<double> grid;
    if (ra.size() <= 3) grid = oracle_grid_max(ra, rb, resolution);

    out << "# frame: " << joined_labels(a.frame()) << "\n";
    out << "carrier: " << a.frame()->format_subset(carrier) << "\n";
    if (g.dump_candidates) {
        print_candidates(out, *a.frame(), "lhs", carrier, enumerate_candidates(ra, cfg));
        print_candidates(out, *a.frame(), "rhs", carrier, enumerate_candidates(rb, cfg));
    }
    out << "bilinear: " << format_decimal(bilinear) << "\n";
    out << "alternating: " << format_decimal(alternating) << "\n";
    if (grid.has_value()) {
        out << "grid(" << format_decimal(resolution) << "): " << format_decimal(*grid) << "\n";
    } else if (ra.size() <= 3) {
        out << "grid(" << format_decimal(resolution) << "): no feasible grid point\n";
    } else {
        out << "grid: skipped (carrier larger than 3 elements)\n";
    }
    double oracle = alternating;
    if (grid.has_value() && *grid > oracle) oracle = *grid;
    const double gap = std::abs(bilinear - oracle);
    out << "oracle max: " << format_decimal(oracle) << "\n";
    out << "gap: " << format_decimal(gap) << "\n";
    out << "agreement: " << (gap <= g.tol ? "ok" : "DISAGREE") << " (tolerance "
        << format_decimal(g.tol) << ")\n";
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"evidential calculus: belief-function transforms and combination rules",
                 "evcalc"};
    app.fallthrough();
    app.require_subcommand(1);

    Global g;
    app.add_option("--cap", g.cap, "largest carrier the k! corner enumeration accepts")
        ->envname("EVCALC_CAP")
        ->check(CLI::Range(1, 20));
    auto* tol_opt = app.add_option("--tol", g.tol, "agreement tolerance for verify/oracle");
    app.add_option("--precision", g.precision,
                   "significant digits for printed values (default: shortest exact)")
        ->check(CLI::Range(0, 17));
    app.add_flag("--dump-candidates", g.dump_candidates, "print per-subset corner candidates");
    app.add_flag("--skip-zeros", g.skip_zeros, "omit zero rows from tables");

    auto* show = app.add_subcommand("show", "validate an evidence file and print its table");
    std::string show_file;
    show->add_option("file", show_file, "evidence file")->required();

    auto* transform = app.add_subcommand("transform", "print Bel, Pl, or Q of an evidence file");
    std::string tr_file, tr_kind;
    transform->add_option("file", tr_file, "evidence file")->required();
    transform->add_option("--to", tr_kind, "target function: bel, pl, or q")
        ->required()
        ->check(CLI::IsMember({"bel", "pl", "q"}));

    auto* combine = app.add_subcommand("combine", "combine evidence files (left fold)");
    std::string cb_rule;
    std::vector<std::string> cb_files;
    bool cb_assoc = false;
    combine->add_option("--rule", cb_rule, "combination rule")
        ->required()
        ->check(CLI::IsMember({"dempster", "tpm"}));
    combine->add_option("files", cb_files, "two or more evidence files")->expected(-2);
    combine->add_flag("--assoc-check", cb_assoc,
                      "also compare the left fold against the right fold");

    auto* cond = app.add_subcommand("condition", "condition evidence on an event");
    std::string cd_file, cd_on;
    cond->add_option("file", cd_file, "evidence file")->required();
    cond->add_option("--on", cd_on, "event, e.g. '{red,blue}'")->required();

    auto* marg = app.add_subcommand("marginalize", "project evidence onto chosen variables");
    std::string mg_file, mg_vars;
    marg->add_option("file", mg_file, "evidence file with 'var' declarations")->required();
    marg->add_option("--vars", mg_vars, "comma-separated variable names to keep")->required();

    auto* verify = app.add_subcommand("verify", "seeded random law checking");
    std::string vf_law, vf_rule = "tpm", vf_out = ".";
    int vf_trials = 100, vf_size = 3;
    std::uint64_t vf_seed = 1;
    double vf_density = 0.5;
    verify->add_option("--law", vf_law, "law to check")
        ->required()
        ->check(CLI::IsMember({"commutativity", "associativity", "duality", "round-trip"}));
    verify->add_option("--rule", vf_rule, "combination rule")
        ->check(CLI::IsMember({"dempster", "tpm"}));
    verify->add_option("--trials", vf_trials, "number of random trials")->check(CLI::Range(1, 1000000));
    verify->add_option("--seed", vf_seed, "generator seed");
    verify->add_option("--size", vf_size, "frame size")->check(CLI::Range(1, 24));
    verify->add_option("--density", vf_density, "focal density of random bpas");
    verify->add_option("--out", vf_out, "directory for counterexample files");

    auto* oracle = app.add_subcommand("oracle",
                                      "compare the corner search against independent maximizers");
    std::string or_a, or_b, or_subset;
    double or_resolution = 0.01;
    oracle->add_option("file_a", or_a, "first evidence file")->required();
    oracle->add_option("file_b", or_b, "second evidence file")->required();
    oracle->add_option("--subset", or_subset, "carrier, e.g. '{red,blue}' (default: full set)");
    oracle->add_option("--resolution", or_resolution, "grid step");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("evcalc");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    g.tol_given = tol_opt->count() > 0;

    try {
        if (*show) return cmd_show(out, g, show_file);
        if (*transform) return cmd_transform(out, g, tr_file, tr_kind);
        if (*combine) {
            if (cb_files.size() < 2) {
                err << "error: combine needs at least two evidence files\n";
                return 2;
            }
            return cmd_combine(out, g, cb_rule, cb_files, cb_assoc);
        }
        if (*cond) return cmd_condition(out, g, cd_file, cd_on);
        if (*marg) return cmd_marginalize(out, g, mg_file, mg_vars);
        if (*verify) {
            return cmd_verify(out, g, vf_law, vf_rule, vf_trials, vf_seed, vf_size, vf_density,
                              vf_out);
        }
        if (*oracle) return cmd_oracle(out, g, or_a, or_b, or_subset, or_resolution);
        err << "error: no command given\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace evcalc
