#include "rowpade/cli.hpp"

#include "rowpade/report.hpp"
#include "rowpade/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace rowpade::cli {

namespace {

using report::json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string series;
    std::vector<std::string> params;
    int n = 0;
    std::string n_range;
    std::string multi_index;
    int m = -1;
    int mstar = -1;
    std::string mode = "exact";
    unsigned precision_bits = 256;
    double epsilon = 1e-2;
    std::vector<std::string> compacts;
    std::string indicator_points;
    std::string target_denominator;
    std::size_t component = 0;
    std::string fit_window;
    std::string subsequence = "auto";
    double decision_tol = 0.05;
    std::string out;
    std::string csv;
    unsigned jobs = 0;
    std::string suite;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const auto& raw : items) {
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--params expects k=v, got '" + item + "'");
            out[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return out;
}

SystemOfSeries load_series(const RunConfig& cfg) {
    const auto params = parse_params(cfg.params);
    const std::string prefix = "catalog:";
    if (cfg.series.rfind(prefix, 0) == 0) return catalog(cfg.series.substr(prefix.size()), params);
    if (!params.empty()) throw UsageError("--params applies to catalog series only");
    std::ifstream in(cfg.series);
    if (!in) throw UsageError("cannot read series file '" + cfg.series + "'");
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_series_spec(text);
}

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        std::size_t u1 = 0, u2 = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        const int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
        if (hi < lo) throw UsageError(std::string(flag) + " is empty");
        return {lo, hi};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects a:b, got '" + text + "'");
    }
}

/// "3", "-1/2", "0.5+2i", "-i"
Exact parse_point(std::string text) {
    text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
    if (text.empty()) throw UsageError("empty point");
    if (text.back() != 'i') return Exact(parse_rational(text));
    text.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size(); k-- > 1;)
        if ((text[k] == '+' || text[k] == '-') && std::tolower(static_cast<unsigned char>(text[k - 1])) != 'e') {
            split = k;
            break;
        }
    const std::string re = split == std::string::npos ? "0" : text.substr(0, split);
    std::string im = split == std::string::npos ? text : text.substr(split);
    if (im.empty() || im == "+" || im == "-") im += "1";
    return Exact(parse_rational(re), parse_rational(im));
}

std::vector<Exact> parse_points(const std::string& text) {
    std::vector<Exact> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(parse_point(item));
        } catch (const std::invalid_argument& e) {
            throw UsageError("bad point '" + item + "': " + e.what());
        }
    }
    return out;
}

Polynomial<Exact> parse_polynomial(const std::string& text) {
    std::vector<Exact> c;
    for (const auto& p : parse_points(text)) c.push_back(p);
    Polynomial<Exact> q(std::move(c));
    if (q.is_zero()) throw UsageError("--target-denominator is the zero polynomial");
    return q;
}

Subsequence parse_subsequence(const std::string& s) {
    if (s == "all") return Subsequence::all;
    if (s == "even") return Subsequence::even;
    if (s == "odd") return Subsequence::odd;
    return Subsequence::automatic;
}

FitOptions fit_options(const RunConfig& cfg) {
    FitOptions o;
    if (!cfg.fit_window.empty()) o.window = parse_range(cfg.fit_window, "--fit-window");
    o.subsequence = parse_subsequence(cfg.subsequence);
    return o;
}

/// Scalar source unless a multi-index is given.
struct Shape {
    bool scalar = true;
    int m = 0;
    int mstar = 0;
    std::optional<MultiIndex> mindex;
};

Shape resolve_shape(const RunConfig& cfg, const SystemOfSeries& sys) {
    Shape s;
    if (!cfg.multi_index.empty()) {
        if (cfg.m >= 0 || cfg.mstar >= 0) throw UsageError("use either --multi-index or --m/--mstar");
        try {
            s.mindex = MultiIndex::parse(cfg.multi_index);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (s.mindex->size() != sys.size())
            throw UsageError("multi-index has " + std::to_string(s.mindex->size()) + " parts but the series has " +
                             std::to_string(sys.size()) + " components");
        s.scalar = false;
        return s;
    }
    if (sys.size() != 1) throw UsageError("a system of series needs --multi-index");
    if (cfg.m < 0) throw UsageError("a scalar series needs --m (or --multi-index)");
    s.m = cfg.m;
    s.mstar = cfg.mstar >= 0 ? cfg.mstar : cfg.m;
    if (s.mstar > s.m) throw UsageError("--mstar must not exceed --m");
    return s;
}

json base_config(const RunConfig& cfg, const Shape& shape) {
    json c{{"series", cfg.series}, {"params", parse_params(cfg.params)}};
    if (shape.scalar) {
        c["m"] = shape.m;
        c["mstar"] = shape.mstar;
    } else {
        c["multi_index"] = shape.mindex->parts();
    }
    c["mode"] = cfg.mode;
    c["precision_bits"] = cfg.precision_bits;
    c["jobs"] = cfg.jobs;
    return c;
}

template <class S>
json contact(const Polynomial<S>& Q, const Polynomial<S>& P, const PowerSeries& f, int n, const Context& ctx) {
    const auto upto = static_cast<std::size_t>(2 * n + 10);
    const auto order = linearization_order(Q, P, f, upto, ctx);
    return json{{"order_of_contact", order}, {"checked_through", upto}, {"remainder_vanishes", order > upto}};
}

template <class S>
json approximate(const RunConfig& cfg, const SystemOfSeries& sys, const Shape& shape, const Context& ctx) {
    json c = base_config(cfg, shape);
    c["n"] = cfg.n;
    json doc = report::document("approximate", std::move(c));
    if (shape.scalar) {
        const auto a = compute_incomplete<S>(sys[0], cfg.n, shape.m, shape.mstar, IncompleteSelector::canonical(), ctx);
        json r = report::approximant(a, ctx.precision_bits);
        r["contact"] = contact(a.Q, a.P, sys[0], cfg.n, ctx);
        doc["result"] = std::move(r);
        return doc;
    }
    const auto h = compute_hermite<S>(sys, cfg.n, *shape.mindex, ctx);
    json r = report::simultaneous(h, ctx.precision_bits);
    json comps = json::array();
    for (std::size_t k = 1; k <= sys.size(); ++k) {
        json v = report::approximant(component_view(h, k, ctx), ctx.precision_bits);
        v["component"] = k;
        v["contact"] = contact(h.Q, h.P[k - 1], sys[k - 1], cfg.n, ctx);
        comps.push_back(std::move(v));
    }
    r["components"] = std::move(comps);
    doc["result"] = std::move(r);
    return doc;
}

struct RowOutput {
    json doc;
    std::vector<report::CsvRow> csv;
    bool failures = false;
};

template <class S>
RowOutput row(const RunConfig& cfg, const SystemOfSeries& sys, const Shape& shape, const Context& ctx) {
    const auto [lo, hi] = parse_range(cfg.n_range, "--n-range");
    const FitOptions fit = fit_options(cfg);
    std::vector<CompactSet> compacts;
    for (const auto& spec : cfg.compacts) {
        try {
            compacts.push_back(CompactSet::parse(spec));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--compact: ") + e.what());
        }
    }
    const auto points = parse_points(cfg.indicator_points);
    std::optional<Polynomial<Float>> target;
    if (!cfg.target_denominator.empty()) {
        const auto canon = canonical_form(parse_polynomial(cfg.target_denominator), ctx);
        target = to_float(canon.poly) * canon.scale;
    }
    if (!shape.scalar && cfg.component > sys.size()) throw UsageError("--component out of range");

    json c = base_config(cfg, shape);
    c["n_range"] = {lo, hi};
    c["epsilon"] = cfg.epsilon;
    c["compacts"] = cfg.compacts;
    c["indicator_points"] = cfg.indicator_points;
    c["target_denominator"] = cfg.target_denominator;
    c["component"] = cfg.component == 0 ? json("all") : json(cfg.component);
    c["fit"] = {{"window", fit.window ? json{fit.window->first, fit.window->second} : json("last two thirds")},
                {"subsequence", cfg.subsequence}};
    c["decision_tol"] = cfg.decision_tol;

    RowOutput out;
    out.doc = report::document("row", std::move(c));
    json failures = json::array();
    auto attempt = [&](const std::string& item, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            failures.push_back({{"item", item}, {"error", e.what()}});
            out.failures = true;
        }
    };

    const RowSource source = shape.scalar ? RowSource::scalar(sys[0], shape.m, shape.mstar)
                                          : RowSource::simultaneous(sys, *shape.mindex, cfg.component ? cfg.component : 1);
    const auto base = build_row<S>(source, lo, hi, ctx, cfg.jobs);
    std::vector<std::pair<std::size_t, RowSequence<S>>> views;
    if (shape.scalar || cfg.component)
        views.emplace_back(shape.scalar ? 1 : cfg.component, base);
    else
        for (std::size_t k = 1; k <= sys.size(); ++k) views.emplace_back(k, base.with_component(k));

    std::vector<CompactSet> excluded;
    for (const auto& K : compacts) excluded.push_back(exclude(K, base, cfg.epsilon));

    json records = json::array();
    std::map<std::string, std::map<int, double>> series_values;
    for (int n = lo; n <= hi; ++n) {
        json rec{{"n", n}};
        if (!shape.scalar) rec["simultaneous"] = report::simultaneous(base.simultaneous(n), ctx.precision_bits);
        json comps = json::array();
        for (const auto& [k, view] : views) {
            json v{{"component", k}};
            v["approximant"] = report::approximant(view.member(n), ctx.precision_bits);
            if (n < hi) {
                attempt("telescope n=" + std::to_string(n) + " component " + std::to_string(k), [&] {
                    const auto t = telescope(view, n);
                    v["telescope"] = report::telescope_term(t, ctx.precision_bits);
                    out.csv.push_back({n, "abs_A:c" + std::to_string(k), abs(t.A).template convert_to<double>()});
                });
            }
            json errs = json::array();
            for (std::size_t i = 0; i < excluded.size(); ++i) {
                attempt("sup_error n=" + std::to_string(n) + " component " + std::to_string(k) + " " + excluded[i].label, [&] {
                    const double e = sup_error(view, n, excluded[i]).template convert_to<double>();
                    const std::string key = "sup_error:c" + std::to_string(k) + ":K" + std::to_string(i + 1);
                    series_values[key][n] = e;
                    errs.push_back({{"compact", excluded[i].label}, {"value", report::tagged("float", ctx.precision_bits, "value", report::number(e))}});
                    out.csv.push_back({n, key, e});
                });
            }
            if (!errs.empty()) v["sup_errors"] = std::move(errs);
            comps.push_back(std::move(v));
        }
        rec["components"] = std::move(comps);
        if (target) {
            const double d = coeff_norm_diff(*target, base.canonical_denominator(n)).template convert_to<double>();
            rec["coeff_norm_diff"] = report::tagged("float", ctx.precision_bits, "value", report::number(d));
            series_values["coeff_norm_diff"][n] = d;
            out.csv.push_back({n, "coeff_norm_diff", d});
        }
        records.push_back(std::move(rec));
    }
    out.doc["records"] = std::move(records);

    json summary;
    json radii = json::array();
    std::vector<ComponentPoleData> pole_data;
    for (const auto& [k, view] : views) {
        json r{{"component", k}};
        if (hi - lo < 8) {
            r["skipped"] = "needs at least 9 values of n";
        } else {
            attempt("radius component " + std::to_string(k), [&] {
                const auto est = estimate_rstar(view, fit);
                r["rstar"] = report::tagged("float", 53u, "value", report::number(est.rstar));
                r["estimator"] = est.estimator_used;
                r["fit"] = report::rate_fit(est.fit);
                std::vector<KnownPole> poles;
                if (view.source().target().analytics()) poles = view.source().target().analytics()->poles;
                pole_data.push_back({est.rstar, std::move(poles)});
            });
        }
        radii.push_back(std::move(r));
    }
    summary["radius"] = std::move(radii);

    IndicatorOptions iopt{fit, cfg.decision_tol};
    json inds = json::array();
    for (const auto& a : points) {
        attempt("indicators at " + to_string(a), [&] {
            json r = report::indicators(indicator_report(base, to_float(a), iopt), ctx.precision_bits);
            if (!shape.scalar && !cfg.component && pole_data.size() == sys.size()) {
                const Float af = to_float(a);
                try {
                    r["k"] = assign_k(pole_data, {af.real().template convert_to<double>(), af.imag().template convert_to<double>()});
                } catch (const std::invalid_argument& e) {
                    r["k"] = nullptr;
                    r["k_note"] = e.what();
                }
            }
            inds.push_back(std::move(r));
        });
    }
    summary["indicators"] = std::move(inds);

    json rates = json::array();
    for (const auto& [key, values] : series_values) {
        attempt("rate of " + key, [&] { rates.push_back({{"quantity", key}, {"fit", report::rate_fit(fit_rate(values, fit))}}); });
    }
    summary["rates"] = std::move(rates);
    json labels = json::array();
    for (std::size_t i = 0; i < excluded.size(); ++i)
        labels.push_back({{"key", "K" + std::to_string(i + 1)}, {"label", excluded[i].label}, {"points", excluded[i].points.size()},
                          {"excluded", excluded[i].excluded}});
    summary["compacts"] = std::move(labels);
    out.doc["summary"] = std::move(summary);
    out.doc["failures"] = std::move(failures);
    return out;
}

void emit(const json& doc, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) {
        out << doc.dump(2) << '\n';
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot write '" + cfg.out + "'");
    f << doc.dump(2) << '\n';
}

std::string csv_path(const RunConfig& cfg) {
    if (!cfg.csv.empty()) return cfg.csv;
    if (cfg.out.empty()) return {};
    const auto dot = cfg.out.find_last_of('.');
    const auto slash = cfg.out.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return cfg.out.substr(0, dot) + ".csv";
    return cfg.out + ".csv";
}

void add_series_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--series", cfg.series, "series-spec JSON file or catalog:NAME")->required();
    sub->add_option("--params", cfg.params, "catalog parameters k=v");
    sub->add_option("--multi-index", cfg.multi_index, "multi-index such as \"1,1\"");
    sub->add_option("--m", cfg.m, "denominator degree of a scalar row")->check(CLI::NonNegativeNumber);
    sub->add_option("--mstar", cfg.mstar, "number of binding conditions (defaults to m)")->check(CLI::NonNegativeNumber);
    sub->add_option("--mode", cfg.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
    sub->add_option("--precision-bits", cfg.precision_bits, "working precision in bits")
        ->check(CLI::Range(64u, 1u << 20))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0: all cores)")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Row sequences of Pade and Hermite-Pade approximants", "rowpade"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* approx = app.add_subcommand("approximate", "one approximant of type (n, m) or (n, multi-index)");
    add_series_options(approx, cfg);
    approx->add_option("--n", cfg.n, "numerator order n")->required()->check(CLI::NonNegativeNumber);

    auto* rowcmd = app.add_subcommand("row", "row sequence over a range of n with analytics");
    add_series_options(rowcmd, cfg);
    rowcmd->add_option("--n-range", cfg.n_range, "inclusive range a:b")->required();
    rowcmd->add_option("--epsilon", cfg.epsilon, "exclusion size for compacts")->check(CLI::PositiveNumber)->capture_default_str();
    rowcmd->add_option("--compact", cfg.compacts, "e.g. \"circle:r=1,points=512\" (repeatable)");
    rowcmd->add_option("--indicator-points", cfg.indicator_points, "points for the pole indicators, e.g. \"1,-1,3\"");
    rowcmd->add_option("--target-denominator", cfg.target_denominator, "ascending coefficients, e.g. \"-1,3/2,-1/2\"");
    rowcmd->add_option("--component", cfg.component, "only this component (1-based) of a system");
    rowcmd->add_option("--fit-window", cfg.fit_window, "n window a:b for every rate fit");
    rowcmd->add_option("--subsequence", cfg.subsequence, "all, even, odd or auto")
        ->check(CLI::IsMember({"all", "even", "odd", "auto"}))
        ->capture_default_str();
    rowcmd->add_option("--decision-tol", cfg.decision_tol, "margin below 1 for counting converging zeros")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    rowcmd->add_option("--csv", cfg.csv, "CSV sidecar path (default: --out with .csv)");

    auto* verify = app.add_subcommand("verify", "run a built-in verification suite");
    verify->add_option("suite", cfg.suite, "exact-denominators, radius, indicators, rates, properties or all")->required();
    verify->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    verify->add_option("--jobs", cfg.jobs, "worker threads (0: all cores)");

    auto* list = app.add_subcommand("list-examples", "names of the built-in example systems");
    list->add_option("--out", cfg.out, "write JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage_error;
    }

    try {
        if (list->parsed()) {
            json entries = json::array();
            for (const auto& name : catalog_names()) {
                entries.push_back({{"name", name}, {"description", catalog_description(name)}});
                if (cfg.out.empty()) out << "catalog:" << name << "  " << catalog_description(name) << '\n';
            }
            if (!cfg.out.empty()) {
                json doc = report::document("list-examples", json::object());
                doc["examples"] = std::move(entries);
                emit(doc, cfg, out);
            }
            return ok;
        }
        if (verify->parsed()) {
            const auto results = run_verify(cfg.suite, cfg.jobs);
            json doc = report::document("verify", {{"suite", cfg.suite}, {"precision_bits", 256}, {"jobs", cfg.jobs}});
            json checks = json::array();
            bool all = true;
            for (const auto& r : results) {
                all = all && r.passed;
                checks.push_back({{"suite", r.suite},
                                  {"name", r.name},
                                  {"passed", r.passed},
                                  {"measured", r.measured},
                                  {"expected", r.expected},
                                  {"error", r.error},
                                  {"seconds", r.seconds}});
                err << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << (r.error.empty() ? r.measured : r.error)
                    << (r.expected.empty() ? "" : " (expected " + r.expected + ")") << '\n';
            }
            doc["checks"] = std::move(checks);
            doc["passed"] = all;
            emit(doc, cfg, out);
            return all ? ok : verification_failed;
        }

        PrecisionScope scope(cfg.precision_bits);
        const Context ctx = Context::active();
        const SystemOfSeries sys = load_series(cfg);
        const Shape shape = resolve_shape(cfg, sys);
        const bool exact = cfg.mode == "exact";
        if (approx->parsed()) {
            emit(exact ? approximate<Exact>(cfg, sys, shape, ctx) : approximate<Float>(cfg, sys, shape, ctx), cfg, out);
            return ok;
        }
        RowOutput result = exact ? row<Exact>(cfg, sys, shape, ctx) : row<Float>(cfg, sys, shape, ctx);
        emit(result.doc, cfg, out);
        if (const auto path = csv_path(cfg); !path.empty()) {
            std::ofstream f(path);
            if (!f) throw UsageError("cannot write '" + path + "'");
            report::write_csv(f, std::move(result.csv));
        }
        if (result.failures) err << "some analytics failed; see \"failures\" in the report\n";
        return result.failures ? numeric_failure : ok;
    } catch (const SeriesError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return numeric_failure;
    }
}

}  // namespace rowpade::cli
