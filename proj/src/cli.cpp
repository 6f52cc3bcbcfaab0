#include "logdec/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "logdec/json_io.hpp"
#include "logdec/representability.hpp"
#include "logdec/systems.hpp"

namespace logdec::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOpts {
    std::string base_name = "2";
    std::string format = "text";
    double tol = 1e-9;
    bool normalize = false;
    bool no_normalize_check = false;

    double base() const { return base_name == "e" ? std::numbers::e : 2.0; }
    const char* unit() const { return base_name == "e" ? "nats" : "bits"; }
};

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

struct Input {
    InfoSystem system;
    std::optional<RefinementMap> refinement;
    double weight_sum = 1.0;
    bool from_file = false;
};

Input load_input(const std::string& file, const std::string& system_name,
                 const GlobalOpts& opts, std::ostream& err) {
    if (!file.empty() && !system_name.empty()) {
        throw UsageError("give either an input file or --system, not both");
    }
    if (file.empty() && system_name.empty()) {
        throw UsageError("an input file or --system is required");
    }
    if (!system_name.empty()) {
        CanonicalSystem canonical = build_canonical_system(system_name);
        return Input{std::move(canonical.system), std::nullopt, 1.0, false};
    }
    SystemDocument doc = load_system_document(file);
    LoadedSystem loaded = build_system(doc, opts.normalize);
    if (!opts.normalize && !opts.no_normalize_check &&
        std::abs(loaded.weight_sum - 1.0) > opts.tol) {
        err << "warning: outcome weights sum to " << fmt9(loaded.weight_sum)
            << "; quantities are still defined, pass --normalize to rescale or "
               "--no-normalize-check to silence this\n";
    }
    return Input{std::move(loaded.system), std::move(loaded.refinement),
                 loaded.weight_sum, true};
}

void emit(const GlobalOpts& opts, std::ostream& out, const json& report,
          const std::string& text) {
    if (opts.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        out << text;
    }
}

std::string render_partition(const OutcomeSpace& space, const Partition& p) {
    std::string s;
    for (OutcomeMask b : p.blocks()) {
        s += "{" + atom_label(space, b) + "}";
    }
    return s;
}

json partition_to_json(const OutcomeSpace& space, const Partition& p) {
    json blocks = json::array();
    for (OutcomeMask b : p.blocks()) {
        json block = json::array();
        OutcomeMask m = b;
        while (m != 0) {
            int i = std::countr_zero(m);
            m &= m - 1;
            block.push_back(space.label(i));
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

// atoms sorted by (degree, bitmask), the table listing order
std::vector<OutcomeMask> sorted_atoms(const AtomSet& s) {
    std::vector<OutcomeMask> masks;
    masks.reserve(s.count());
    s.for_each([&](OutcomeMask m) { masks.push_back(m); });
    std::stable_sort(masks.begin(), masks.end(), [](OutcomeMask a, OutcomeMask b) {
        const int da = std::popcount(a), db = std::popcount(b);
        return da != db ? da < db : a < b;
    });
    return masks;
}

json atoms_to_json(const OutcomeSpace& space, const std::vector<OutcomeMask>& masks) {
    json arr = json::array();
    for (OutcomeMask m : masks) arr.push_back(atom_label(space, m));
    return arr;
}

std::string render_formal_sum(const OutcomeSpace& space, const FormalSum& z) {
    std::vector<std::pair<OutcomeMask, std::int64_t>> terms(z.terms().begin(),
                                                            z.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        const int da = std::popcount(a.first), db = std::popcount(b.first);
        return da != db ? da < db : a.first < b.first;
    });
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [mask, coeff] : terms) {
        const std::int64_t mag = std::abs(coeff);
        if (first) {
            if (coeff < 0) s += "-";
        } else {
            s += coeff < 0 ? " - " : " + ";
        }
        if (mag != 1) s += std::to_string(mag) + "*";
        s += atom_label(space, mask);
        first = false;
    }
    return s;
}

int cmd_table(const Input& in, const GlobalOpts& opts, std::ostream& out) {
    const InfoSystem& sys = in.system;
    const MuTable& table = sys.mu(opts.base());
    const std::vector<OutcomeMask> masks = sorted_atoms(AtomSet::universe(sys.space().size()));

    json atoms = json::array();
    std::size_t width = 4;
    for (OutcomeMask m : masks) {
        width = std::max(width, atom_label(sys.space(), m).size());
    }
    std::ostringstream text;
    text << "atom" << std::string(width - 4 + 2, ' ') << "degree  mu (" << opts.unit()
         << ")\n";
    double sum = 0.0;
    for (OutcomeMask m : masks) {
        const double v = table.value(m);
        sum += v;
        const std::string label = atom_label(sys.space(), m);
        atoms.push_back({{"atom", label}, {"degree", std::popcount(m)}, {"mu", v}});
        text << label << std::string(width - label.size() + 2, ' ') << std::popcount(m)
             << "       " << (v < 0 ? "" : " ") << fmt9(v) << "\n";
    }
    text << "sum" << std::string(width - 3 + 10, ' ') << " " << fmt9(sum) << "\n";

    json report{{"schema", "ld-report/1"},
                {"command", "table"},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"labels", sys.space().labels()},
                {"p", sys.space().probs()},
                {"atoms", atoms},
                {"sum", sum}};
    emit(opts, out, report, text.str());
    return kExitOk;
}

int cmd_quantity(const Input& in, const GlobalOpts& opts, const std::string& kind,
                 const std::vector<std::string>& vars, std::ostream& out) {
    const double value = quantity(in.system, quantity_kind_from_name(kind), vars,
                                  opts.base());
    json report{{"schema", "ld-report/1"}, {"command", "quantity"}, {"kind", kind},
                {"vars", vars},            {"base", opts.base_name}, {"unit", opts.unit()},
                {"value", value}};
    emit(opts, out, report, fmt9(value) + " " + opts.unit() + "\n");
    return kExitOk;
}

int cmd_multiplicity(const Input& in, const GlobalOpts& opts, const std::string& kind,
                     const std::vector<std::string>& vars, std::ostream& out) {
    const MultiplicityKind mk = multiplicity_kind_from_name(kind);
    const FormalSum z = multiplicity_formal_sum(in.system, mk, vars);
    const double value = measure_formal_sum(in.system.mu(opts.base()), z);
    json report{{"schema", "ld-report/1"}, {"command", "quantity"}, {"kind", kind},
                {"vars", vars},            {"base", opts.base_name}, {"unit", opts.unit()},
                {"value", value}};
    emit(opts, out, report, fmt9(value) + " " + opts.unit() + "\n");
    return kExitOk;
}

int cmd_region(const Input& in, const GlobalOpts& opts, const std::string& expr,
               std::ostream& out) {
    const AtomSet region = eval_region(in.system, expr);
    const double value = measure_atom_set(in.system.mu(opts.base()), region);
    const std::vector<OutcomeMask> masks = sorted_atoms(region);

    std::ostringstream text;
    text << fmt9(value) << " " << opts.unit() << "\n";
    text << "atoms (" << masks.size() << "):";
    for (OutcomeMask m : masks) text << " " << atom_label(in.system.space(), m);
    text << "\n";

    json report{{"schema", "ld-report/1"},
                {"command", "region"},
                {"expr", expr},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"atoms", atoms_to_json(in.system.space(), masks)},
                {"count", masks.size()},
                {"value", value}};
    emit(opts, out, report, text.str());
    return kExitOk;
}

int cmd_expr(const Input& in, const GlobalOpts& opts, const std::string& entropy_expr,
             std::ostream& out) {
    const FormalSum z = expression_to_formal_sum(in.system, entropy_expr);
    const double value = measure_formal_sum(in.system.mu(opts.base()), z);

    json terms = json::array();
    std::vector<std::pair<OutcomeMask, std::int64_t>> sorted(z.terms().begin(),
                                                             z.terms().end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const int da = std::popcount(a.first), db = std::popcount(b.first);
        return da != db ? da < db : a.first < b.first;
    });
    for (const auto& [mask, coeff] : sorted) {
        terms.push_back({{"atom", atom_label(in.system.space(), mask)}, {"coeff", coeff}});
    }

    std::ostringstream text;
    text << render_formal_sum(in.system.space(), z) << "\n";
    text << fmt9(value) << " " << opts.unit() << "\n";

    json report{{"schema", "ld-report/1"},
                {"command", "expr"},
                {"expression", entropy_expr},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"terms", terms},
                {"value", value}};
    emit(opts, out, report, text.str());
    return kExitOk;
}

int cmd_common(const Input& in, const GlobalOpts& opts, const std::string& method,
               const std::vector<std::string>& vars, std::ostream& out) {
    CommonInfoResult result = [&] {
        if (method == "gk") return gacs_korner(in.system, vars, opts.base());
        if (method == "wyner") return wyner(in.system, vars, opts.base());
        throw UsageError("--method must be gk or wyner");
    }();

    const std::vector<OutcomeMask> witness = sorted_atoms(result.witness_content);
    std::ostringstream text;
    text << fmt9(result.value) << " " << opts.unit() << "\n";
    text << "partition " << render_partition(in.system.space(), result.partition) << "\n";
    text << "witness atoms (" << witness.size() << "):";
    std::size_t shown = 0;
    for (OutcomeMask m : witness) {
        if (shown++ == 32) {
            text << " ...";
            break;
        }
        text << " " << atom_label(in.system.space(), m);
    }
    text << "\n";

    json report{{"schema", "ld-report/1"},
                {"command", "common"},
                {"method", method},
                {"vars", vars},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"partition", partition_to_json(in.system.space(), result.partition)},
                {"value", result.value},
                {"witness_atoms", atoms_to_json(in.system.space(), witness)}};
    emit(opts, out, report, text.str());
    return kExitOk;
}

int cmd_refine(const Input& in, const GlobalOpts& opts, const std::string& map_file,
               bool check_invariance, std::vector<std::string> vars, std::ostream& out) {
    std::optional<RefinementMap> map = in.refinement;
    if (!map_file.empty()) {
        SystemDocument map_doc = load_system_document(map_file);
        if (map_doc.refinements.empty()) {
            throw ValidationError("--map file has no \"refinements\" field");
        }
        map = refine_space(in.system.space(), map_doc.refinements);
    }
    if (!map) {
        throw ValidationError(
            "no refinement given: add a \"refinements\" field or pass --map");
    }
    if (vars.empty()) vars = in.system.variable_names();

    const MuTable parent_table = mu_table(map->parent(), opts.base());
    const MuTable child_table = mu_table(map->child(), opts.base());

    json rows = json::array();
    std::ostringstream text;
    bool all_ok = true;
    for (const std::string& name : vars) {
        const Partition& p = in.system.variable(name);
        const Partition mapped = map_partition(*map, p);
        const double mu_parent =
            measure_atom_set(parent_table, content(map->parent(), p));
        const double mu_child =
            measure_atom_set(child_table, content(map->child(), mapped));
        const double delta = std::abs(mu_child - mu_parent);
        const bool ok = delta <= opts.tol;
        all_ok = all_ok && ok;
        json row{{"name", name},
                 {"mu_parent", mu_parent},
                 {"mu_child", mu_child},
                 {"delta", delta}};
        if (check_invariance) row["invariant"] = ok;
        rows.push_back(std::move(row));
        text << name << ": " << fmt9(mu_parent) << " -> " << fmt9(mu_child)
             << " (delta " << fmt9(delta) << ")";
        if (check_invariance) text << (ok ? "  ok" : "  VIOLATION");
        text << "\n";
    }
    text << "child outcomes: " << map->child().size() << "\n";

    json report{{"schema", "ld-report/1"},
                {"command", "refine"},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"parent_outcomes", map->parent().size()},
                {"child_outcomes", map->child().size()},
                {"child_labels", map->child().labels()},
                {"variables", rows}};
    if (check_invariance) report["invariance_ok"] = all_ok;
    emit(opts, out, report, text.str());
    return (check_invariance && !all_ok) ? kExitCheckFailed : kExitOk;
}

int cmd_discriminate(const Input& in, const GlobalOpts& opts,
                     std::vector<std::string> vars, std::ostream& out) {
    if (vars.empty()) vars = in.system.variable_names();
    const double value = discriminate(in.system, vars, opts.base());
    json report{{"schema", "ld-report/1"},
                {"command", "discriminate"},
                {"vars", vars},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"value", value}};
    emit(opts, out, report, fmt9(value) + " " + opts.unit() + "\n");
    return kExitOk;
}

int cmd_kl(const Input& in, const GlobalOpts& opts, int bins, std::ostream& out) {
    const std::vector<double>& w = in.system.space().probs();
    if (bins == 0) bins = static_cast<int>(w.size());
    const double value = kl_via_measure(w, bins, opts.base());
    json report{{"schema", "ld-report/1"},
                {"command", "kl"},
                {"bins", bins},
                {"base", opts.base_name},
                {"unit", opts.unit()},
                {"value", value}};
    emit(opts, out, report, fmt9(value) + " " + opts.unit() + "\n");
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"exact engine for the logarithmic decomposition of entropy", "ld"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts opts;
    app.add_option("--base", opts.base_name, "logarithm base")
        ->check(CLI::IsMember({"2", "e"}));
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--tol", opts.tol, "tolerance for checks");
    app.add_flag("--normalize", opts.normalize, "rescale weights to sum to one");
    app.add_flag("--no-normalize-check", opts.no_normalize_check,
                 "do not warn when weights do not sum to one");

    std::string file, system_name;
    auto add_input = [&](CLI::App* cmd, bool file_positional = true) {
        if (file_positional) cmd->add_option("file", file, "system document (JSON)");
        cmd->add_option("--system", system_name,
                        "canonical system: dyadic|triadic|xor|redundant_pair");
    };

    CLI::App* table = app.add_subcommand("table", "full mu table of the space");
    add_input(table);

    std::string kind;
    std::vector<std::string> vars;
    CLI::App* quantity_cmd =
        app.add_subcommand("quantity", "a named information quantity");
    add_input(quantity_cmd);
    quantity_cmd->add_option("--kind", kind, "quantity name")->required();
    quantity_cmd->add_option("--vars", vars, "variable names")->required();

    std::string region_expr;
    CLI::App* region = app.add_subcommand("region", "measure a set-algebra region");
    add_input(region);
    region->add_option("--expr", region_expr, "e.g. \"X&Y\\Z\" (or with ∩ ∪)")
        ->required();

    std::string entropy_expr;
    CLI::App* expr = app.add_subcommand("expr", "entropy expression as an atom combination");
    add_input(expr);
    expr->add_option("--entropy", entropy_expr, "e.g. \"I(X;Y) - H(X|Y) + H(X,Y)\"")
        ->required();

    std::string method;
    CLI::App* common = app.add_subcommand("common", "common information");
    add_input(common);
    common->add_option("--method", method, "gk|wyner")->required();
    common->add_option("--vars", vars, "variable names")->required();

    std::string map_file;
    bool check_invariance = false;
    CLI::App* refine = app.add_subcommand("refine", "apply a refinement map");
    add_input(refine);
    refine->add_option("--map", map_file, "JSON file with a refinements field");
    refine->add_flag("--check-invariance", check_invariance,
                     "verify measures are preserved");
    refine->add_option("--vars", vars, "variables to map (default: all)");

    CLI::App* discriminate_cmd =
        app.add_subcommand("discriminate", "mu of R_2 of the shared content");
    add_input(discriminate_cmd);
    discriminate_cmd->add_option("--vars", vars, "variable names (default: all)");

    int bins = 0;
    CLI::App* kl = app.add_subcommand("kl", "divergence from the uniform distribution");
    add_input(kl);
    kl->add_option("--bins", bins, "bin count (default: outcome count)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    // `--vars X Y worked.json` is valid usage: a trailing value that names
    // an existing file is the input document, not a variable
    if (file.empty() && system_name.empty() && !vars.empty() &&
        std::filesystem::exists(vars.back())) {
        file = vars.back();
        vars.pop_back();
    }

    try {
        const Input input = load_input(file, system_name, opts, err);
        if (table->parsed()) return cmd_table(input, opts, out);
        if (quantity_cmd->parsed()) {
            if (kind == "TC" || kind == "DTC" || kind == "O_information") {
                return cmd_multiplicity(input, opts, kind, vars, out);
            }
            return cmd_quantity(input, opts, kind, vars, out);
        }
        if (region->parsed()) return cmd_region(input, opts, region_expr, out);
        if (expr->parsed()) return cmd_expr(input, opts, entropy_expr, out);
        if (common->parsed()) return cmd_common(input, opts, method, vars, out);
        if (refine->parsed()) {
            return cmd_refine(input, opts, map_file, check_invariance, vars, out);
        }
        if (discriminate_cmd->parsed()) return cmd_discriminate(input, opts, vars, out);
        if (kl->parsed()) return cmd_kl(input, opts, bins, out);
        err << "error: no subcommand\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::parse_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}

}  // namespace logdec::cli
