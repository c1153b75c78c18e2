#include "arbor/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arbor/apps.hpp"
#include "arbor/comm_series.hpp"
#include "arbor/free_series.hpp"
#include "arbor/json_io.hpp"
#include "arbor/trees.hpp"

namespace arbor::cli {

namespace {

Json json_int(const Integer& n) {
    if (n.fits_slong_p()) return Json(n.get_si());
    return Json(n.get_str());
}

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream file(path);
    if (!file) throw Error("io-error", "cannot open file: " + path);
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(cur, &used);
            if (used != cur.size()) throw std::invalid_argument(cur);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("cannot parse ") + what + " entry \"" + cur + "\"");
        }
    }
    if (out.empty()) throw InvalidArgument(std::string("empty ") + what + " list");
    return out;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

struct Options {
    Caps caps;
    std::istream* in = nullptr;
    std::ostream* out = nullptr;
};

CommMap load_comm_map(const std::string& path, Options& opt) {
    return comm_map_from_json(parse_json_text(read_text(path, *opt.in)));
}

CommSeries load_comm_series(const std::string& path, Options& opt) {
    return comm_series_from_json(parse_json_text(read_text(path, *opt.in)));
}

FreeMap load_free_map(const std::string& path, Options& opt) {
    return free_map_from_json(parse_json_text(read_text(path, *opt.in)));
}

FreeSeries load_free_series(const std::string& path, Options& opt) {
    return free_series_from_json(parse_json_text(read_text(path, *opt.in)));
}

// The nonlinear coefficient table of a map-shaped JSON file; entries of
// degree < 2 are rejected.
CoeffTable load_nonlinear_table(const CommMap& m) {
    CoeffTable t = CoeffTable::zero_extended();
    for (int i = 1; i <= m.dim(); ++i)
        for (const auto& [alpha, v] : m.component(i).coeffs()) {
            if (alpha.degree() < 2)
                throw InvalidArgument(
                    "nonlinear coefficient table must contain only degree >= 2 entries");
            t.set(i, alpha, v);
        }
    return t;
}

void setup_compose(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("compose", "Compose maps in commuting variables");
    cmd->fallthrough();
    auto files = std::make_shared<std::vector<std::string>>();
    auto use_fdb = std::make_shared<bool>(false);
    auto use_direct = std::make_shared<bool>(false);
    cmd->add_option("files", *files, "map files, outermost first (use - for stdin)")
        ->required()
        ->expected(2, -1);
    auto* f = cmd->add_flag("--fdb", *use_fdb, "sum over final labelled trees");
    cmd->add_flag("--direct", *use_direct, "direct monomial substitution (default)")
        ->excludes(f);
    cmd->callback([&opt, files, use_fdb] {
        std::vector<CommMap> chain;
        for (const std::string& p : *files) chain.push_back(load_comm_map(p, opt));
        CommMap result = [&] {
            if (*use_fdb) return compose_fdb(chain, opt.caps);
            CommMap acc = chain.front();
            for (std::size_t k = 1; k < chain.size(); ++k) acc = compose_direct(acc, chain[k]);
            return acc;
        }();
        emit(*opt.out, to_json(result));
    });
}

void setup_free_compose(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("free-compose", "Compose maps in free variables");
    cmd->fallthrough();
    auto files = std::make_shared<std::vector<std::string>>();
    auto use_fdb = std::make_shared<bool>(false);
    auto use_direct = std::make_shared<bool>(false);
    cmd->add_option("files", *files, "map files, outermost first (use - for stdin)")
        ->required()
        ->expected(2, -1);
    auto* f = cmd->add_flag("--fdb", *use_fdb, "sum over final planar trees");
    cmd->add_flag("--direct", *use_direct, "direct word substitution (default)")->excludes(f);
    cmd->callback([&opt, files, use_fdb] {
        std::vector<FreeMap> chain;
        for (const std::string& p : *files) chain.push_back(load_free_map(p, opt));
        FreeMap result = [&] {
            if (*use_fdb) return free_compose_fdb(chain, opt.caps);
            FreeMap acc = chain.front();
            for (std::size_t k = 1; k < chain.size(); ++k)
                acc = free_compose_direct(acc, chain[k]);
            return acc;
        }();
        emit(*opt.out, to_json(result));
    });
}

void setup_invert(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("invert", "Compositional inverse (commuting variables)");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto path = std::make_shared<std::string>("auto");
    cmd->add_option("file", *file, "map file (use - for stdin)")->required();
    cmd->add_option("--path", *path, "tree | recursive | alt | reduce | auto")
        ->check(CLI::IsMember({"tree", "recursive", "alt", "reduce", "auto"}));
    cmd->callback([&opt, file, path] {
        CommMap f = load_comm_map(*file, opt);
        std::string p = *path;
        if (p == "auto")
            p = jacobian_linear_term(f).is_identity() ? "recursive" : "reduce";
        CommMap g = [&] {
            if (p == "tree") return invert_identity_linear(f, InversionPath::TreeSum, opt.caps);
            if (p == "recursive")
                return invert_identity_linear(f, InversionPath::Recursive, opt.caps);
            if (p == "alt")
                return invert_general(f, GeneralInversionPath::AlternatingSum, opt.caps);
            return invert_general(f, GeneralInversionPath::Reduction, opt.caps);
        }();
        emit(*opt.out, to_json(g));
    });
}

void setup_free_invert(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("free-invert", "Compositional inverse (free variables)");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto path = std::make_shared<std::string>("auto");
    cmd->add_option("file", *file, "map file (use - for stdin)")->required();
    cmd->add_option("--path", *path, "tree | recursive | alt | reduce | auto")
        ->check(CLI::IsMember({"tree", "recursive", "alt", "reduce", "auto"}));
    cmd->callback([&opt, file, path] {
        FreeMap f = load_free_map(*file, opt);
        std::string p = *path;
        if (p == "auto")
            p = free_jacobian_at_zero(f).is_identity() ? "recursive" : "reduce";
        FreeMap g = [&] {
            if (p == "tree") return free_invert(f, InversionPath::TreeSum, opt.caps);
            if (p == "recursive") return free_invert(f, InversionPath::Recursive, opt.caps);
            if (p == "alt")
                return free_invert_general(f, GeneralInversionPath::AlternatingSum, opt.caps);
            return free_invert_general(f, GeneralInversionPath::Reduction, opt.caps);
        }();
        emit(*opt.out, to_json(g));
    });
}

void setup_phi(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand(
        "phi", "Involution on nonlinear coefficient tables (inverse coefficients, negated)");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    cmd->add_option("file", *file, "table file, map-shaped with degree >= 2 entries")->required();
    cmd->callback([&opt, file] {
        CommMap h = load_comm_map(*file, opt);
        CoeffTable table = load_nonlinear_table(h);
        CoeffTable out = phi_involution(table, h.dim(), h.truncation(), opt.caps);
        CommMap shaped(h.dim(), h.truncation());
        for (const auto& [key, v] : out.entries()) shaped.component(key.first).set(key.second, v);
        emit(*opt.out, to_json(shaped));
    });
}

void setup_fern_check(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("fern-check",
                                    "Test whether the Jacobian of a degree >= 2 map is nilpotent");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto m = std::make_shared<int>(0);
    auto bound = std::make_shared<int>(-1);
    auto path = std::make_shared<std::string>("both");
    cmd->add_option("file", *file, "map file with only degree >= 2 terms")->required();
    cmd->add_option("--m", *m, "matrix power to test")->required();
    cmd->add_option("--bound", *bound, "degree bound, at least m*(delta-1)")->required();
    cmd->add_option("--path", *path, "matrix | fern | both")
        ->check(CLI::IsMember({"matrix", "fern", "both"}));
    cmd->callback([&opt, file, m, bound, path] {
        CommMap h = load_comm_map(*file, opt);
        std::optional<FernCheckReport> matrix, fern;
        if (*path != "fern")
            matrix = fern_nilpotency_check(h, *m, FernPath::MatrixPower, *bound, opt.caps);
        if (*path != "matrix")
            fern = fern_nilpotency_check(h, *m, FernPath::FernSum, *bound, opt.caps);
        if (matrix && fern && !(matrix->nilpotent == fern->nilpotent &&
                                matrix->witness == fern->witness))
            throw Error("internal-disagreement", "matrix and fern verdicts disagree");
        const FernCheckReport& r = matrix ? *matrix : *fern;
        Json j;
        j["m"] = *m;
        j["degree_bound"] = *bound;
        j["path"] = *path;
        j["nilpotent"] = r.nilpotent;
        if (r.witness) {
            Json w;
            w["i"] = r.witness->i;
            w["j"] = r.witness->j;
            w["alpha"] = r.witness->alpha.exponents();
            w["value"] = r.witness->value.str();
            j["witness"] = std::move(w);
        }
        emit(*opt.out, j);
    });
}

void setup_trees(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("trees", "Enumerate labelled or planar tree families");
    cmd->fallthrough();
    auto mode = std::make_shared<std::string>();
    auto family = std::make_shared<std::string>();
    auto dim = std::make_shared<int>(1);
    auto roott = std::make_shared<int>(1);
    auto alpha_text = std::make_shared<std::string>();
    auto word_text = std::make_shared<std::string>();
    auto leaves = std::make_shared<int>(0);
    auto gens = std::make_shared<int>(2);
    auto terminal = std::make_shared<int>(1);
    cmd->add_option("mode", *mode, "count | list")
        ->required()
        ->check(CLI::IsMember({"count", "list"}));
    cmd->add_option("--family", *family, "final | proper | alternating | fern")
        ->required()
        ->check(CLI::IsMember({"final", "proper", "alternating", "fern"}));
    cmd->add_option("--dim", *dim, "dimension N")->required();
    cmd->add_option("--root", *roott, "root type (default 1)");
    auto* oa = cmd->add_option("--alpha", *alpha_text, "leaf multi-index, e.g. 2,0,1");
    auto* ow = cmd->add_option("--word", *word_text, "leaf-type word (planar), e.g. 3,1,1");
    auto* ol = cmd->add_option("--leaves", *leaves, "leaf count shorthand for --alpha with N=1");
    oa->excludes(ow)->excludes(ol);
    ow->excludes(ol);
    cmd->add_option("--gens", *gens, "generations m (final, fern)");
    cmd->add_option("--terminal", *terminal, "terminal type j (fern)");
    cmd->callback([&opt, mode, family, dim, roott, alpha_text, word_text, leaves, gens,
                   terminal, oa, ow, ol] {
        TreeFamily fam = *family == "final"         ? TreeFamily::Final
                         : *family == "proper"      ? TreeFamily::Proper
                         : *family == "alternating" ? TreeFamily::Alternating
                                                    : TreeFamily::Fern;
        Json j;
        j["family"] = *family;
        j["dimension"] = *dim;
        j["root"] = *roott;
        bool list = *mode == "list";
        if (ow->count() > 0) {
            if (fam == TreeFamily::Fern)
                throw InvalidArgument("fern family has no planar counterpart");
            Word kappa(parse_int_list(*word_text, "--word"));
            PlanarFamilySpec spec{fam, *dim, *roott, kappa, *gens};
            j["word"] = kappa.letters();
            if (fam == TreeFamily::Final) j["gens"] = *gens;
            std::size_t count = 0;
            Json items = Json::array();
            for_each_planar_tree(spec,
                                 [&](const PlanarTree& t) {
                                     ++count;
                                     if (list) items.push_back(to_json(t));
                                 },
                                 opt.caps);
            j["count"] = count;
            if (list) j["trees"] = std::move(items);
        } else {
            MultiIndex alpha{1};
            if (ol->count() > 0) {
                if (*dim != 1)
                    throw InvalidArgument("--leaves shorthand requires --dim 1; use --alpha");
                if (*leaves < 0) throw InvalidArgument("--leaves must be >= 0");
                alpha = MultiIndex{*leaves};
            } else if (oa->count() > 0) {
                alpha = MultiIndex(parse_int_list(*alpha_text, "--alpha"));
            } else {
                throw InvalidArgument("one of --alpha, --word, --leaves is required");
            }
            TreeFamilySpec spec{fam, *dim, *roott, alpha, *gens, *terminal};
            j["alpha"] = alpha.exponents();
            if (fam == TreeFamily::Final || fam == TreeFamily::Fern) j["gens"] = *gens;
            if (fam == TreeFamily::Fern) j["terminal"] = *terminal;
            std::size_t count = 0;
            Json items = Json::array();
            for_each_tree(spec,
                          [&](const LabelledTree& t) {
                              ++count;
                              if (list) items.push_back(to_json(t));
                          },
                          opt.caps);
            j["count"] = count;
            if (list) j["trees"] = std::move(items);
        }
        emit(*opt.out, j);
    });
}

void setup_hausdorff(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("hausdorff", "Letter-deletion derivative of a free series");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto var = std::make_shared<int>(0);
    cmd->add_option("file", *file, "free series file (use - for stdin)")->required();
    cmd->add_option("--var", *var, "variable index j")->required();
    cmd->callback([&opt, file, var] {
        FreeSeries f = load_free_series(*file, opt);
        emit(*opt.out, to_json(hausdorff_derivative(f, *var)));
    });
}

CoeffMap table_from_series(const CommSeries& s) {
    CoeffMap t;
    for (const auto& [alpha, v] : s.coeffs()) {
        if (alpha.is_zero())
            throw InvalidArgument("moment/cumulant tables are indexed by nonzero indices only");
        t[alpha] = v;
    }
    return t;
}

CommSeries series_from_table(const CoeffMap& t, int dim, int trunc) {
    CommSeries s(dim, trunc);
    for (const auto& [alpha, v] : t) s.set(alpha, v);
    return s;
}

void setup_app(CLI::App& root, Options& opt) {
    auto* cmd = root.add_subcommand("app", "Combinatorial applications");
    cmd->fallthrough();
    cmd->require_subcommand(1);

    {
        auto* sub = cmd->add_subcommand("bell", "Number of set partitions of [k]");
        sub->fallthrough();
        auto k = std::make_shared<int>(0);
        sub->add_option("--k", *k)->required();
        sub->callback([&opt, k] {
            Json j;
            j["k"] = *k;
            j["bell"] = json_int(bell_number(*k, static_cast<std::size_t>(opt.caps.max_degree)));
            emit(*opt.out, j);
        });
    }
    {
        auto* sub = cmd->add_subcommand("stirling", "Partitions of [k] into j blocks");
        sub->fallthrough();
        auto k = std::make_shared<int>(0);
        auto jj = std::make_shared<int>(0);
        sub->add_option("--k", *k)->required();
        sub->add_option("--j", *jj)->required();
        sub->callback([&opt, k, jj] {
            Json j;
            j["k"] = *k;
            j["j"] = *jj;
            j["stirling"] =
                json_int(stirling2(*k, *jj, static_cast<std::size_t>(opt.caps.max_degree)));
            emit(*opt.out, j);
        });
    }
    {
        auto* sub = cmd->add_subcommand(
            "hermite", "Probabilists' Hermite polynomial, coefficients lowest degree first");
        sub->fallthrough();
        auto k = std::make_shared<int>(0);
        sub->add_option("--k", *k)->required();
        sub->callback([&opt, k] {
            Polynomial p = hermite_polynomial(*k, static_cast<std::size_t>(opt.caps.max_degree));
            Json arr = Json::array();
            for (int d = 0; d <= *k; ++d) {
                const Rational& c = p.at(d);
                arr.push_back(c.is_integer() ? json_int(c.numerator()) : Json(c.str()));
            }
            emit(*opt.out, arr);
        });
    }
    {
        auto* sub = cmd->add_subcommand("moments", "Moments from a cumulant table");
        sub->fallthrough();
        auto file = std::make_shared<std::string>();
        sub->add_option("file", *file, "cumulant table as a comm-series file")->required();
        sub->callback([&opt, file] {
            CommSeries in = load_comm_series(*file, opt);
            CoeffMap out = moments_from_cumulants(table_from_series(in), in.dim(),
                                                  in.truncation(),
                                                  static_cast<std::size_t>(opt.caps.max_degree));
            emit(*opt.out, to_json(series_from_table(out, in.dim(), in.truncation())));
        });
    }
    {
        auto* sub = cmd->add_subcommand("cumulants", "Cumulants from a moment table");
        sub->fallthrough();
        auto file = std::make_shared<std::string>();
        sub->add_option("file", *file, "moment table as a comm-series file")->required();
        sub->callback([&opt, file] {
            CommSeries in = load_comm_series(*file, opt);
            CoeffMap out = cumulants_from_moments(table_from_series(in), in.dim(),
                                                  in.truncation(),
                                                  static_cast<std::size_t>(opt.caps.max_degree));
            emit(*opt.out, to_json(series_from_table(out, in.dim(), in.truncation())));
        });
    }
    {
        auto* sub = cmd->add_subcommand("reciprocal", "Multiplicative inverse of a series");
        sub->fallthrough();
        auto file = std::make_shared<std::string>();
        sub->add_option("file", *file, "series file with constant term 1")->required();
        sub->callback([&opt, file] {
            CommSeries in = load_comm_series(*file, opt);
            emit(*opt.out,
                 to_json(series_reciprocal(in, static_cast<std::size_t>(opt.caps.max_degree))));
        });
    }
    {
        auto* sub = cmd->add_subcommand(
            "count-trees", "Proper trees with k labelled leaves, by two independent routes");
        sub->fallthrough();
        auto k = std::make_shared<int>(0);
        auto even = std::make_shared<bool>(false);
        sub->add_option("--k", *k)->required();
        sub->add_flag("--even", *even, "only trees with even outdegrees everywhere");
        sub->callback([&opt, k, even] {
            ProperTreeCount c = count_proper_trees(
                *k, *even ? OutdegreeFilter::EvenOnly : OutdegreeFilter::All, opt.caps);
            Json j;
            j["k"] = *k;
            j["filter"] = *even ? "even" : "all";
            j["by_series"] = json_int(c.by_series);
            j["by_enumeration"] = json_int(c.by_enumeration);
            emit(*opt.out, j);
        });
    }
}

const std::set<std::string>& known_verbs() {
    static const std::set<std::string> verbs = {"compose",   "free-compose", "invert",
                                                "free-invert", "phi",        "fern-check",
                                                "trees",     "hausdorff",    "app"};
    return verbs;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    auto emit_error = [&err](const std::string& code, const std::string& message) {
        Json e;
        e["error"] = Json{{"code", code}, {"message", message}};
        err << e.dump() << "\n";
    };

    if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
        known_verbs().count(args.front()) == 0) {
        emit_error("unknown-verb", "unknown verb: " + args.front());
        return 2;
    }

    Options opt;
    opt.in = &in;
    opt.out = &out;

    CLI::App app{"arbor: exact composition and inversion of truncated power series"};
    app.require_subcommand(1);
    app.add_option("--max-leaves", opt.caps.max_leaves,
                   "tree enumeration leaf cap (default 8)");
    app.add_option("--max-degree", opt.caps.max_degree,
                   "partition/recursion degree cap (default 12)");
    app.add_option("--max-cells", opt.caps.memo_budget, "memo budget in cells")
        ->envname("ARBOR_MAX_CELLS");

    setup_compose(app, opt);
    setup_free_compose(app, opt);
    setup_invert(app, opt);
    setup_free_invert(app, opt);
    setup_phi(app, opt);
    setup_fern_check(app, opt);
    setup_trees(app, opt);
    setup_hausdorff(app, opt);
    setup_app(app, opt);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("arbor");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const Error& e) {
        emit_error(e.code(), e.what());
        return e.code() == "resource-limit" ? 3 : 2;
    } catch (const CLI::ParseError& e) {
        emit_error("usage-error", e.what());
        return 2;
    }
}

} // namespace arbor::cli
