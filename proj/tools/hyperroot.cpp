// Command-line front end: classification, multiplicities, tables, bound
// checks, q-series and asymptotics over the hyperroot library.
//
// Exit codes: 0 success; 2 bad input (unparseable matrix/root/flags);
// 3 computation failure (recursion, integrality, cache I/O); 4 domain
// violation (wrong algebra kind, vector outside the positive cone, ...).

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperroot/asymptotics.hpp"
#include "hyperroot/bounds.hpp"
#include "hyperroot/cartan.hpp"
#include "hyperroot/multiplicity.hpp"
#include "hyperroot/qseries.hpp"

namespace {

using namespace hyperroot;

// Raised for anything the user typed wrong; mapped to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Output { Pretty, Json, Csv };

Output parse_output(const std::string& s, bool csv_allowed) {
    if (s == "pretty") return Output::Pretty;
    if (s == "json") return Output::Json;
    if (s == "csv") {
        if (!csv_allowed) throw InputError("csv output is not available for this command");
        return Output::Csv;
    }
    throw InputError("unknown output format '" + s + "' (pretty, json" +
                     (csv_allowed ? ", csv)" : ")"));
}

GCM resolve_gcm(const std::string& matrix_arg, const std::string& preset_name) {
    try {
        if (!preset_name.empty()) {
            if (!matrix_arg.empty())
                throw InputError("give either a matrix argument or --preset, not both");
            return preset(preset_name);
        }
        if (matrix_arg.empty())
            throw InputError("a matrix (rows like '2,-3;-3,2'), JSON, or --preset is required");
        return parse_gcm(matrix_arg);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

RootVector resolve_root(const std::string& text, int rank) {
    try {
        return parse_root(text, rank);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

PetersonOptions engine_options(const std::string& cache_dir, bool no_cache, int threads) {
    if (threads < 0) throw InputError("--threads must be >= 0");
    PetersonOptions opt;
    opt.cache_dir = no_cache ? std::string() : cache_dir;
    opt.threads = threads;
    return opt;
}

void emit_cache_warning(const PetersonEngine& engine) {
    if (!engine.cache_warning().empty())
        std::cerr << "warning: " << engine.cache_warning() << "\n";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// ----------------------------------------------------------------- classify

int cmd_classify(const GCM& g, Output out) {
    std::vector<ComponentType> comps = classify(g);
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["matrix"] = g.a;
        j["rank"] = g.rank();
        j["symmetrizable"] = g.symmetrizable();
        nlohmann::ordered_json comp_rows = nlohmann::ordered_json::array();
        for (const ComponentType& c : comps) {
            nlohmann::ordered_json row;
            row["vertices"] = c.vertices;
            row["kind"] = kind_name(c.type.kind);
            row["det"] = c.type.det.get_str();
            row["hyperbolic"] = c.type.hyperbolic;
            row["compact_hyperbolic"] = c.type.compact_hyperbolic;
            row["lorentzian"] = c.type.lorentzian;
            comp_rows.push_back(std::move(row));
        }
        j["components"] = std::move(comp_rows);
        j["det"] = det(g.a).get_str();
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "rank: " << g.rank() << "\n";
    std::cout << "symmetrizable: " << yesno(g.symmetrizable()) << "\n";
    if (comps.size() == 1) {
        const AlgebraType& t = comps[0].type;
        std::cout << "kind: " << kind_name(t.kind) << "\n";
        std::cout << "det: " << t.det.get_str() << "\n";
        std::cout << "hyperbolic: "
                  << (t.hyperbolic ? (t.compact_hyperbolic ? "yes (compact)" : "yes (noncompact)")
                                   : "no")
                  << "\n";
        std::cout << "lorentzian: " << yesno(t.lorentzian) << "\n";
    } else {
        std::cout << "components: " << comps.size() << "\n";
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const ComponentType& c = comps[i];
            std::cout << "  [" << i << "] vertices ";
            for (std::size_t k = 0; k < c.vertices.size(); ++k)
                std::cout << (k ? "," : "") << c.vertices[k];
            std::cout << ": " << kind_name(c.type.kind) << ", det " << c.type.det.get_str()
                      << "\n";
        }
        std::cout << "det: " << det(g.a).get_str() << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------- mult

int cmd_mult(const GCM& g, const std::string& root_text, const std::string& engine_name,
             const PetersonOptions& opt, Output out) {
    RootVector alpha = resolve_root(root_text, g.rank());
    bool want_pet = engine_name == "peterson" || engine_name == "both";
    bool want_bm = engine_name == "bm" || engine_name == "both";
    if (!want_pet && !want_bm)
        throw InputError("unknown engine '" + engine_name + "' (peterson, bm, both)");
    std::optional<Int> pet, bm;
    if (want_pet) {
        PetersonEngine engine(g, opt);
        pet = engine.mult(alpha);
        emit_cache_warning(engine);
    }
    if (want_bm) bm = mult_berman_moody(g, alpha);
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["matrix"] = g.a;
        j["root"] = alpha;
        j["engine"] = engine_name;
        j["peterson"] = pet ? nlohmann::ordered_json(pet->get_str()) : nullptr;
        j["berman_moody"] = bm ? nlohmann::ordered_json(bm->get_str()) : nullptr;
        if (pet && bm) j["match"] = (*pet == *bm);
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "root: " << root_to_text(alpha) << "\n";
    if (pet) std::cout << "peterson: " << pet->get_str() << "\n";
    if (bm) std::cout << "berman-moody: " << bm->get_str() << "\n";
    if (pet && bm) std::cout << "match: " << yesno(*pet == *bm) << "\n";
    return 0;
}

// ------------------------------------------------------------------- extend

int cmd_extend(const GCM& g, long long height, const PetersonOptions& opt, Output out) {
    PetersonEngine engine(g, opt);
    engine.extend_to(height);
    emit_cache_warning(engine);
    std::size_t roots = 0;
    for (long long h = 1; h <= height; ++h) roots += engine.roots_of_height(h).size();
    std::string cache_file;
    if (!opt.cache_dir.empty())
        cache_file = opt.cache_dir + "/" + engine.table().gcm_id + ".json";
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["matrix"] = g.a;
        j["frontier"] = engine.table().frontier;
        j["roots"] = roots;
        j["cache_file"] = cache_file.empty() ? nlohmann::ordered_json(nullptr)
                                             : nlohmann::ordered_json(cache_file);
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "frontier: " << engine.table().frontier << "\n";
    std::cout << "roots: " << roots << "\n";
    std::cout << "cache: " << (cache_file.empty() ? "(disabled)" : cache_file) << "\n";
    return 0;
}

// -------------------------------------------------------------------- table

struct TableRow {
    RootVector root;
    long long h = 0;
    long long norm = 0;
    Int mult;
    std::optional<Int> frenkel, borcherds, niemann;
};

int cmd_table(const GCM& g, long long height, int d, const PetersonOptions& opt, Output out) {
    PetersonEngine engine(g, opt);
    engine.extend_to(height);
    emit_cache_warning(engine);
    BilinearForm form(g);
    int dd = d == 0 ? g.rank() : d;
    bool partition_bounds = g.symmetric() && dd >= 3;
    bool eta_bound = (g.a == preset("F").a);

    std::vector<TableRow> rows;
    long long max_arg = 0;
    for (long long h = 1; h <= height; ++h)
        for (const RootVector& r : engine.roots_of_height(h)) {
            TableRow row;
            row.root = r;
            row.h = h;
            row.norm = form.norm(r);
            row.mult = engine.mult(r);
            if ((partition_bounds || eta_bound) && row.norm % 2 == 0 && row.norm <= 2)
                max_arg = std::max(max_arg, 1 - row.norm / 2);
            rows.push_back(std::move(row));
        }
    PowerSeries pf(0), pb(0), ps(0);
    int ord = static_cast<int>(max_arg);
    if (partition_bounds) {
        pf = colored_partitions(dd - 2, ord);
        pb = colored_partitions(dd - 1, ord);
    }
    if (eta_bound) ps = p_sigma_series(ord);
    for (TableRow& row : rows) {
        if (row.norm % 2 != 0 || row.norm > 2) continue;
        int n = static_cast<int>(1 - row.norm / 2);
        if (partition_bounds) {
            row.frenkel = pf[n];
            if (row.norm <= 0) row.borcherds = pb[n] - pb[n - 1];
        }
        if (eta_bound) row.niemann = ps[n];
    }

    auto opt_str = [](const std::optional<Int>& v) { return v ? v->get_str() : std::string(); };
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["matrix"] = g.a;
        j["height"] = height;
        nlohmann::ordered_json rws = nlohmann::ordered_json::array();
        for (const TableRow& row : rows) {
            nlohmann::ordered_json r;
            r["root"] = row.root;
            r["height"] = row.h;
            r["norm"] = row.norm;
            r["mult"] = row.mult.get_str();
            r["frenkel"] = row.frenkel ? nlohmann::ordered_json(row.frenkel->get_str()) : nullptr;
            r["borcherds"] =
                row.borcherds ? nlohmann::ordered_json(row.borcherds->get_str()) : nullptr;
            r["niemann"] = row.niemann ? nlohmann::ordered_json(row.niemann->get_str()) : nullptr;
            rws.push_back(std::move(r));
        }
        j["rows"] = std::move(rws);
        std::cout << j.dump() << "\n";
        return 0;
    }
    if (out == Output::Csv) {
        std::cout << "root,height,norm,mult,frenkel,borcherds,niemann\n";
        for (const TableRow& row : rows)
            std::cout << '"' << root_to_text(row.root) << '"' << ',' << row.h << ',' << row.norm
                      << ',' << row.mult.get_str() << ',' << opt_str(row.frenkel) << ','
                      << opt_str(row.borcherds) << ',' << opt_str(row.niemann) << "\n";
        return 0;
    }
    std::size_t w = 10;
    for (const TableRow& row : rows) w = std::max(w, root_to_text(row.root).size() + 2);
    auto dash = [](const std::optional<Int>& v) { return v ? v->get_str() : std::string("-"); };
    std::cout << std::left << std::setw(8) << "height" << std::setw(static_cast<int>(w)) << "root"
              << std::setw(8) << "norm" << std::setw(12) << "mult" << std::setw(12) << "frenkel"
              << std::setw(12) << "borcherds" << std::setw(12) << "niemann" << "\n";
    for (const TableRow& row : rows)
        std::cout << std::left << std::setw(8) << row.h << std::setw(static_cast<int>(w))
                  << root_to_text(row.root) << std::setw(8) << row.norm << std::setw(12)
                  << row.mult.get_str() << std::setw(12) << dash(row.frenkel) << std::setw(12)
                  << dash(row.borcherds) << std::setw(12) << dash(row.niemann) << "\n";
    return 0;
}

// -------------------------------------------------------------------- check

int cmd_check(const GCM& g, long long height, int d, const PetersonOptions& opt, Output out) {
    PetersonEngine engine(g, opt);
    BoundReport report = check_frenkel(engine, height, d);
    emit_cache_warning(engine);
    if (out == Output::Json) {
        std::cout << report.to_json() << "\n";
        return 0;
    }
    if (out == Output::Csv) {
        std::cout << report.to_csv();
        return 0;
    }
    std::size_t w = 10;
    for (const BoundRow& row : report.rows) w = std::max(w, root_to_text(row.alpha).size() + 2);
    std::cout << std::left << std::setw(static_cast<int>(w)) << "root" << std::setw(8) << "norm"
              << std::setw(12) << "mult" << std::setw(12) << "frenkel" << std::setw(12)
              << "borcherds" << std::setw(12) << "niemann" << "flags\n";
    for (const BoundRow& row : report.rows) {
        std::string flags;
        if (row.saturated) flags += "saturated ";
        if (row.violated) flags += "VIOLATED ";
        if (row.second_branch_possible) flags += "second-branch? ";
        std::cout << std::left << std::setw(static_cast<int>(w)) << root_to_text(row.alpha)
                  << std::setw(8) << row.norm << std::setw(12) << row.mult.get_str()
                  << std::setw(12) << row.frenkel.get_str() << std::setw(12)
                  << row.borcherds.get_str() << std::setw(12)
                  << (row.niemann ? row.niemann->get_str() : std::string("-")) << flags << "\n";
    }
    std::cout << "rows: " << report.rows.size() << "\n";
    std::cout << "saturations: " << report.saturations << "\n";
    std::cout << "violations: " << report.violations << "\n";
    return 0;
}

// ------------------------------------------------------------------- series

int cmd_series(const std::string& name, int order, int colors, Output out) {
    std::optional<PowerSeries> s;
    std::string label = name;
    if (name == "phi")
        s = phi_series(order);
    else if (name == "p" || name == "partitions") {
        s = colored_partitions(1, order);
        label = "p";
    } else if (name == "colored") {
        if (colors < 1) throw InputError("--colors must be >= 1 for the colored series");
        s = colored_partitions(colors, order);
        label = "p^(" + std::to_string(colors) + ")";
    } else if (name == "xi")
        s = xi_series(order);
    else if (name == "ff")
        s = ff_level2_series(order);
    else if (name == "psigma") {
        s = p_sigma_series(order);
        label = "p_sigma";
    } else if (name == "tau")
        s = tau_series(order);
    else
        throw InputError("unknown series '" + name + "' (phi, p, colored, xi, ff, psigma, tau)");
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["order"] = order;
        if (name == "colored") j["colors"] = colors;
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (int n = 0; n <= order; ++n) coeffs.push_back((*s)[n].get_str());
        j["coefficients"] = std::move(coeffs);
        std::cout << j.dump() << "\n";
        return 0;
    }
    if (out == Output::Csv) {
        std::cout << "n,coefficient\n";
        for (int n = 0; n <= order; ++n) std::cout << n << ',' << (*s)[n].get_str() << "\n";
        return 0;
    }
    for (int n = 0; n <= order; ++n)
        std::cout << label << "(" << n << ") = " << (*s)[n].get_str() << "\n";
    return 0;
}

// ------------------------------------------------------------------- asympt

int cmd_asympt(std::optional<long long> n_opt, std::optional<long long> norm_opt, int order,
               Output out) {
    if (n_opt.has_value() == norm_opt.has_value())
        throw InputError("give exactly one of --n or --norm");
    long long n;
    if (n_opt)
        n = *n_opt;
    else {
        if (*norm_opt % 2 != 0)
            throw OddNormError("(alpha,alpha) = " + std::to_string(*norm_opt) + " is odd");
        n = -*norm_opt / 2;
    }
    AsymptoticEstimate est = estimate_p_sigma(n, order);
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["n"] = est.n;
        j["estimates"] = "p_sigma(" + std::to_string(est.n + 1) + ")";
        j["main_term"] = est.main_term;
        j["exact"] = est.exact ? nlohmann::ordered_json(est.exact->get_str()) : nullptr;
        j["relative_error"] =
            est.relative_error ? nlohmann::ordered_json(*est.relative_error) : nullptr;
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "n: " << est.n << " (estimating p_sigma(" << est.n + 1 << "))\n";
    std::cout << "main term: " << std::fixed << std::setprecision(2) << est.main_term << "\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
    if (est.exact)
        std::cout << "exact: " << est.exact->get_str() << "\n"
                  << "relative error: " << *est.relative_error << "\n";
    else
        std::cout << "exact: - (raise --order past " << est.n + 1 << " to compare)\n";
    return 0;
}

// ----------------------------------------------------- verify-denominator

int cmd_verify(const GCM& g, long long height, Output out) {
    DenominatorReport report = verify_denominator_identity(g, height);
    if (out == Output::Json) {
        nlohmann::ordered_json j;
        j["matrix"] = g.a;
        j["height"] = report.height_bound;
        j["product_terms"] = report.product_terms;
        j["sum_terms"] = report.sum_terms;
        nlohmann::ordered_json mm = nlohmann::ordered_json::array();
        for (const DenominatorMismatch& m : report.mismatches) {
            nlohmann::ordered_json row;
            row["at"] = m.at;
            row["product_side"] = m.product_side.get_str();
            row["sum_side"] = m.sum_side.get_str();
            mm.push_back(std::move(row));
        }
        j["mismatches"] = std::move(mm);
        j["ok"] = report.ok();
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "height: " << report.height_bound << "\n";
    std::cout << "product terms: " << report.product_terms << "\n";
    std::cout << "sum terms: " << report.sum_terms << "\n";
    std::cout << "mismatches: " << report.mismatches.size() << "\n";
    for (const DenominatorMismatch& m : report.mismatches)
        std::cout << "  at " << root_to_text(m.at) << ": product " << m.product_side.get_str()
                  << " vs sum " << m.sum_side.get_str() << "\n";
    std::cout << "status: " << (report.ok() ? "ok" : "MISMATCH") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hyperroot: exact root multiplicities, bounds and asymptotics for "
        "symmetrizable Kac-Moody algebras"};
    app.require_subcommand(1);

    std::string matrix_arg, preset_name, output = "pretty";
    std::string cache_dir = default_cache_dir();
    bool no_cache = false;
    int threads = 0;
    std::string root_text, engine_name = "peterson", series_name;
    long long height = 20;
    int d = 0;
    int order = 256;
    int colors = 2;
    std::optional<long long> n_opt, norm_opt;

    auto add_matrix = [&](CLI::App* cmd) {
        cmd->add_option("matrix", matrix_arg,
                        "Cartan matrix: rows like '2,-3;-3,2', JSON {\"matrix\":[[..]]}, or a "
                        "preset name");
        cmd->add_option("--preset", preset_name, "named matrix: F, A1, E8, E9, E10, E11, A1(a,b)");
    };
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", output, "pretty (default), json, or csv where applicable");
    };
    auto add_cache = [&](CLI::App* cmd) {
        cmd->add_option("--cache-dir", cache_dir,
                        "multiplicity cache directory (default $HYPERROOT_CACHE_DIR or ./cache)");
        cmd->add_flag("--no-cache", no_cache, "compute without reading or writing any cache");
        cmd->add_option("--threads", threads, "worker threads for the recursion (0 = default)");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "type, determinant and flags of a matrix");
    add_matrix(c_classify);
    add_output(c_classify);

    CLI::App* c_mult = app.add_subcommand("mult", "multiplicity of one root vector");
    add_matrix(c_mult);
    add_output(c_mult);
    add_cache(c_mult);
    c_mult->add_option("--root", root_text, "vector like 7,7,2")->required();
    c_mult->add_option("--engine", engine_name, "peterson (default), bm, or both");

    CLI::App* c_extend = app.add_subcommand("extend", "grow the cached multiplicity table");
    add_matrix(c_extend);
    add_output(c_extend);
    add_cache(c_extend);
    c_extend->add_option("--height", height, "target height (default 20)");

    CLI::App* c_table = app.add_subcommand(
        "table", "all positive roots up to a height, with norms, multiplicities and bounds");
    add_matrix(c_table);
    add_output(c_table);
    add_cache(c_table);
    c_table->add_option("--height", height,
                        "height cut (default 20; deep table rows need a higher cut)");
    c_table->add_option("--d", d, "ambient lattice dimension for bounds (default: rank)");

    CLI::App* c_check = app.add_subcommand(
        "check", "compare multiplicities of imaginary roots against the conjectured bounds");
    add_matrix(c_check);
    add_output(c_check);
    add_cache(c_check);
    c_check->add_option("--height", height, "height cut (default 20)");
    c_check->add_option("--d", d, "ambient lattice dimension (default: rank)");

    CLI::App* c_series = app.add_subcommand("series", "print q-series coefficients");
    add_output(c_series);
    c_series->add_option("--name", series_name, "phi, p, colored, xi, ff, psigma, tau")
        ->required();
    c_series->add_option("--order", order, "truncation order (default 256)");
    c_series->add_option("--colors", colors, "color count for --name colored");

    CLI::App* c_asympt =
        app.add_subcommand("asympt", "circle-method main term for the eta-quotient coefficients");
    add_output(c_asympt);
    c_asympt->add_option("--n", n_opt, "expansion index n (estimates p_sigma(n+1))");
    c_asympt->add_option("--norm", norm_opt, "(alpha,alpha); converted via n = -(alpha,alpha)/2");
    c_asympt->add_option("--order", order, "series order for the exact comparison (default 256)");

    CLI::App* c_verify = app.add_subcommand(
        "verify-denominator", "expand both sides of the denominator identity and compare");
    add_matrix(c_verify);
    add_output(c_verify);
    c_verify->add_option("--height", height, "height cut (default 20)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_classify)
            return cmd_classify(resolve_gcm(matrix_arg, preset_name), parse_output(output, false));
        if (*c_mult)
            return cmd_mult(resolve_gcm(matrix_arg, preset_name), root_text, engine_name,
                            engine_options(cache_dir, no_cache, threads),
                            parse_output(output, false));
        if (*c_extend)
            return cmd_extend(resolve_gcm(matrix_arg, preset_name), height,
                              engine_options(cache_dir, no_cache, threads),
                              parse_output(output, false));
        if (*c_table)
            return cmd_table(resolve_gcm(matrix_arg, preset_name), height, d,
                             engine_options(cache_dir, no_cache, threads),
                             parse_output(output, true));
        if (*c_check)
            return cmd_check(resolve_gcm(matrix_arg, preset_name), height, d,
                             engine_options(cache_dir, no_cache, threads),
                             parse_output(output, true));
        if (*c_series) return cmd_series(series_name, order, colors, parse_output(output, true));
        if (*c_asympt) return cmd_asympt(n_opt, norm_opt, order, parse_output(output, false));
        if (*c_verify)
            return cmd_verify(resolve_gcm(matrix_arg, preset_name), height,
                              parse_output(output, false));
        return 2;  // unreachable: require_subcommand(1)
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotGCMError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateDivisorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IntegralityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
