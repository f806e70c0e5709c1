#include "rowpade/series.hpp"

#include "rowpade/context.hpp"
#include "rowpade/gcd.hpp"
#include "rowpade/roots.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rowpade {

namespace {

bool exact_less(const Exact& a, const Exact& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

// ---------------------------------------------------------------- OpaqueConstant

OpaqueConstant OpaqueConstant::log_of(const Exact& argument, const Exact& weight) {
    if (argument.is_zero()) throw SeriesError("logarithm of zero");
    OpaqueConstant c;
    c.add(weight, argument);
    return c;
}

void OpaqueConstant::add(const Exact& weight, const Exact& argument) {
    if (weight.is_zero() || argument == Exact(1)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), argument,
                               [](const Term& t, const Exact& a) { return exact_less(t.argument, a); });
    if (it != terms_.end() && it->argument == argument) {
        it->weight += weight;
        if (it->weight.is_zero()) terms_.erase(it);
        return;
    }
    terms_.insert(it, Term{weight, argument});
}

OpaqueConstant& OpaqueConstant::operator+=(const OpaqueConstant& o) {
    for (const auto& t : o.terms_) add(t.weight, t.argument);
    return *this;
}

OpaqueConstant& OpaqueConstant::operator*=(const Exact& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.weight *= s;
    return *this;
}

bool operator==(const OpaqueConstant& a, const OpaqueConstant& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].weight != b.terms_[i].weight || a.terms_[i].argument != b.terms_[i].argument) return false;
    return true;
}

Float OpaqueConstant::value() const {
    Float v(0);
    for (const auto& t : terms_) v += to_float(t.weight) * log(to_float(t.argument));
    return v;
}

std::string OpaqueConstant::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + rowpade::to_string(t.weight) + ")*log(" + rowpade::to_string(t.argument) + ")";
    }
    return out;
}

// ---------------------------------------------------------------- ClosedForm

void ClosedForm::simplify() {
    if (denominator.is_zero()) throw SeriesError("zero denominator");
    if (numerator.is_zero()) {
        denominator = Polynomial<Exact>::constant(Exact(1));
    } else {
        auto r = gcd_reduce(numerator, denominator);
        numerator = std::move(r.quotients[0]);
        denominator = std::move(r.quotients[1]);
    }
    const Exact d0 = denominator[0];
    if (!d0.is_zero()) {
        const Exact inv = Exact(1) / d0;
        numerator *= inv;
        denominator *= inv;
    }
    std::vector<OpaqueConstant::Term> kept;
    for (const auto& t : logs) {
        auto it = std::find_if(kept.begin(), kept.end(), [&](const auto& k) { return k.argument == t.argument; });
        if (it == kept.end())
            kept.push_back(t);
        else
            it->weight += t.weight;
    }
    kept.erase(std::remove_if(kept.begin(), kept.end(), [](const auto& t) { return t.weight.is_zero(); }), kept.end());
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return exact_less(a.argument, b.argument); });
    logs = std::move(kept);
}

Float ClosedForm::evaluate(const Float& z) const {
    const Float den = eval_float(denominator, z);
    if (den.is_zero()) throw std::domain_error("closed form evaluated at a pole");
    Float v = eval_float(numerator, z) / den;
    for (const auto& t : logs) {
        // log(a) + log(1 - z/a): the branch that agrees with the Taylor series in |z| < |a|.
        const Float a = to_float(t.argument);
        v += to_float(t.weight) * (log(a) + log(Float(1) - z / a));
    }
    return v;
}

// ---------------------------------------------------------------- ReferenceAnalytics

double ReferenceAnalytics::radius(std::size_t m) const {
    if (radii.empty()) return std::numeric_limits<double>::quiet_NaN();
    return m < radii.size() ? radii[m] : radii.back();
}

unsigned ReferenceAnalytics::pole_order(std::complex<double> a, double tol) const {
    for (const auto& p : poles)
        if (std::abs(p.location - a) <= tol * std::max(1.0, std::abs(a))) return p.order;
    return 0;
}

namespace {

ReferenceAnalytics analytics_from(const ClosedForm& form) {
    ReferenceAnalytics a;
    if (form.denominator.degree() >= 1) {
        const Context ctx = Context::active();
        for (const auto& r : roots(form.denominator, ctx).roots)
            a.poles.push_back({std::complex<double>(static_cast<double>(r.value.real()), static_cast<double>(r.value.imag())),
                               r.multiplicity});
    }
    double branch = std::numeric_limits<double>::infinity();
    for (const auto& t : form.logs) branch = std::min(branch, static_cast<double>(abs(t.argument)));

    std::vector<double> moduli;
    for (const auto& p : a.poles)
        for (unsigned k = 0; k < p.order; ++k) moduli.push_back(std::abs(p.location));
    std::sort(moduli.begin(), moduli.end());
    for (double r : moduli) a.radii.push_back(std::min(branch, r));
    a.radii.push_back(branch);

    auto copy = std::make_shared<ClosedForm>(form);
    a.evaluator = [copy](const Float& z) { return copy->evaluate(z); };
    return a;
}

PowerSeries::Generator closed_form_generator(const ClosedForm& form) {
    auto f = std::make_shared<ClosedForm>(form);
    return [f](std::size_t k, const std::vector<Exact>& previous) {
        // N = D * r  gives  r_k = (N_k - sum_{j>=1} D_j r_{k-j}) / D_0; previous holds the full phi,
        // so the log part is subtracted back out before use.
        auto log_part = [&](std::size_t i) {
            Exact s(0);
            if (i == 0) return s;
            for (const auto& t : f->logs) {
                Exact ak(1);
                for (std::size_t e = 0; e < i; ++e) ak *= t.argument;
                s -= t.weight / (Exact(static_cast<int>(i)) * ak);
            }
            return s;
        };
        Exact acc = f->numerator[k];
        const auto& d = f->denominator;
        for (std::size_t j = 1; j <= k && j < d.size(); ++j) acc -= d[j] * (previous[k - j] - log_part(k - j));
        return acc / d[0] + log_part(k);
    };
}

OpaqueConstant closed_form_constant(const ClosedForm& form) {
    OpaqueConstant c;
    for (const auto& t : form.logs) c += OpaqueConstant::log_of(t.argument, t.weight);
    return c;
}

std::string describe(const ClosedForm& form) {
    std::ostringstream os;
    bool any = false;
    if (!form.numerator.is_zero()) {
        os << "(";
        for (std::size_t k = 0; k < form.numerator.size(); ++k) os << (k ? ", " : "") << form.numerator[k];
        os << ")/(";
        for (std::size_t k = 0; k < form.denominator.size(); ++k) os << (k ? ", " : "") << form.denominator[k];
        os << ")";
        any = true;
    }
    for (const auto& t : form.logs) {
        os << (any ? " + " : "") << "(" << t.weight << ")*log(" << t.argument << " - z)";
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- PowerSeries

PowerSeries::PowerSeries(Generator generator, std::string description, OpaqueConstant constant)
    : memo_(std::make_shared<Memo>()), description_(std::move(description)), constant_(std::move(constant)) {
    memo_->generator = std::move(generator);
}

PowerSeries::PowerSeries(ClosedForm form, std::string description) : memo_(std::make_shared<Memo>()) {
    form.simplify();
    if (form.denominator[0].is_zero()) throw SeriesError("series not defined at origin");
    memo_->generator = closed_form_generator(form);
    description_ = description.empty() ? describe(form) : std::move(description);
    constant_ = closed_form_constant(form);
    analytics_ = analytics_from(form);
    form_ = std::move(form);
}

Exact PowerSeries::coeff(std::size_t k) const {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto& v = memo_->values;
    while (v.size() <= k) v.push_back(memo_->generator(v.size(), v));
    return v[k];
}

std::vector<Exact> PowerSeries::coeffs(std::size_t count) const {
    if (count == 0) return {};
    coeff(count - 1);
    std::lock_guard<std::mutex> lock(memo_->mutex);
    return std::vector<Exact>(memo_->values.begin(), memo_->values.begin() + static_cast<std::ptrdiff_t>(count));
}

Float PowerSeries::coeff_float(std::size_t k) const {
    Float c = to_float(coeff(k));
    if (k == 0) c += constant_.value();
    return c;
}

Float PowerSeries::evaluate(const Float& z) const {
    if (!has_evaluator()) throw SeriesError("no closed form evaluator for " + description_);
    return analytics_->evaluator(z);
}

// ---------------------------------------------------------------- builders

PowerSeries rational_series(const Polynomial<Exact>& P, const Polynomial<Exact>& Q) {
    if (Q.is_zero() || Q[0].is_zero()) throw SeriesError("series not defined at origin");
    ClosedForm form;
    form.numerator = P;
    form.denominator = Q;
    return PowerSeries(std::move(form));
}

PowerSeries log_shift_series(const Exact& a) {
    if (a.is_zero()) throw SeriesError("log_shift_series: a must be nonzero");
    ClosedForm form;
    form.numerator = Polynomial<Exact>{};
    form.logs.push_back({Exact(1), a});
    return PowerSeries(std::move(form), "log(" + to_string(a) + " - z)");
}

PowerSeries polynomial_series(const std::vector<Exact>& values) {
    ClosedForm form;
    form.numerator = Polynomial<Exact>(values);
    return PowerSeries(std::move(form));
}

PowerSeries combine(const std::vector<SeriesTerm>& terms) {
    if (terms.empty()) return polynomial_series({});
    const bool closed = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.series.closed_form().has_value(); });
    std::string description;
    for (const auto& t : terms) {
        if (!description.empty()) description += " + ";
        description += "(" + to_string(t.weight) + ")*[" + t.series.description() + "]";
    }
    if (closed) {
        ClosedForm sum;
        sum.numerator = Polynomial<Exact>{};
        for (const auto& t : terms) {
            const ClosedForm& f = *t.series.closed_form();
            sum.numerator = sum.numerator * f.denominator + f.numerator * sum.denominator * t.weight;
            sum.denominator = sum.denominator * f.denominator;
            for (const auto& l : f.logs) sum.logs.push_back({l.weight * t.weight, l.argument});
            if (!sum.numerator.is_zero()) {
                // keep intermediate degrees small
                auto r = gcd_reduce(sum.numerator, sum.denominator);
                sum.numerator = std::move(r.quotients[0]);
                sum.denominator = std::move(r.quotients[1]);
            }
        }
        return PowerSeries(std::move(sum), description);
    }

    OpaqueConstant constant;
    for (const auto& t : terms) constant += t.series.opaque() * t.weight;
    auto parts = std::make_shared<std::vector<SeriesTerm>>(terms);
    PowerSeries out(
        [parts](std::size_t k, const std::vector<Exact>&) {
            Exact acc(0);
            for (const auto& t : *parts) acc += t.weight * t.series.coeff(k);
            return acc;
        },
        description, constant);

    ReferenceAnalytics merged;
    bool consistent = true;
    for (const auto& t : terms) {
        if (t.weight.is_zero()) continue;
        if (!t.series.analytics()) {
            consistent = false;
            break;
        }
        for (const auto& p : t.series.analytics()->poles) {
            if (merged.pole_order(p.location) != 0) consistent = false;
            merged.poles.push_back(p);
        }
    }
    if (consistent) out.set_analytics(std::move(merged));
    return out;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return combine({{Exact(1), a}, {Exact(1), b}}); }
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return combine({{Exact(1), a}, {Exact(-1), b}}); }
PowerSeries operator*(const Exact& s, const PowerSeries& f) { return combine({{s, f}}); }

// ---------------------------------------------------------------- catalog

namespace {

using P = Polynomial<Exact>;

Exact lit(long num, long den = 1) { return Exact(Rational(num) / Rational(den)); }

// 1/(a - z)
PowerSeries simple_pole(const Exact& a) { return rational_series(P{Exact(1)}, P{a, lit(-1)}); }

void require_no_params(const std::string& name, const std::map<std::string, std::string>& params) {
    if (!params.empty()) throw SeriesError("catalog entry " + name + " takes no parameter '" + params.begin()->first + "'");
}

struct Entry {
    const char* name;
    const char* description;
};

const Entry kEntries[] = {
    {"5.1-fg", "(1/(1-z^2), z/(1+z^2))"},
    {"5.1-fh", "(1/(1-z^2), 1/(1+z))"},
    {"5.1-fw", "(1/(1-z^2), 1/(1+z) + 1/(1-z/p)), param p > 1"},
    {"5.2-f1f2", "(1/(1-z) + 1/(2-z), 1/(3-z))"},
    {"5.2-g", "(1/(1-z) + log(3-z), 1/(2-z) + log(10-z))"},
    {"5.3-h", "(1/(1-z) + 1/(2-z) + log(3-z), 1/(1-z) + log(3-z) + log(4-z))"},
    {"5.3-hhat", "(h1 - h2, h2) for the pair h"},
};

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& e : kEntries) out.emplace_back(e.name);
    return out;
}

std::string catalog_description(const std::string& name) {
    for (const auto& e : kEntries)
        if (name == e.name) return e.description;
    throw SeriesError("unknown catalog entry '" + name + "'");
}

SystemOfSeries catalog(const std::string& name, const std::map<std::string, std::string>& params) {
    catalog_description(name);
    const PowerSeries f = rational_series(P{lit(1)}, P{lit(1), lit(0), lit(-1)});
    SystemOfSeries s{name, {}};
    if (name == "5.1-fg") {
        require_no_params(name, params);
        s.components = {f, rational_series(P{lit(0), lit(1)}, P{lit(1), lit(0), lit(1)})};
    } else if (name == "5.1-fh") {
        require_no_params(name, params);
        s.components = {f, rational_series(P{lit(1)}, P{lit(1), lit(1)})};
    } else if (name == "5.1-fw") {
        auto it = params.find("p");
        if (it == params.end()) throw SeriesError("catalog entry 5.1-fw needs parameter p");
        if (params.size() > 1) throw SeriesError("catalog entry 5.1-fw takes only parameter p");
        Rational p;
        try {
            p = parse_rational(it->second);
        } catch (const std::invalid_argument& e) {
            throw SeriesError(std::string("parameter p: ") + e.what());
        }
        if (p <= 1) throw SeriesError("parameter p must exceed 1");
        const Exact pe(p);
        // 1/(1+z) + 1/(1-z/p) = 1/(1+z) + p/(p-z)
        s.components = {f, rational_series(P{lit(1)}, P{lit(1), lit(1)}) + pe * simple_pole(pe)};
    } else if (name == "5.2-f1f2") {
        require_no_params(name, params);
        s.components = {simple_pole(lit(1)) + simple_pole(lit(2)), simple_pole(lit(3))};
    } else if (name == "5.2-g") {
        require_no_params(name, params);
        s.components = {simple_pole(lit(1)) + log_shift_series(lit(3)), simple_pole(lit(2)) + log_shift_series(lit(10))};
    } else {
        require_no_params(name, params);
        const PowerSeries h1 = combine({{lit(1), simple_pole(lit(1))}, {lit(1), simple_pole(lit(2))}, {lit(1), log_shift_series(lit(3))}});
        const PowerSeries h2 = combine({{lit(1), simple_pole(lit(1))}, {lit(1), log_shift_series(lit(3))}, {lit(1), log_shift_series(lit(4))}});
        if (name == "5.3-h")
            s.components = {h1, h2};
        else
            s.components = {h1 - h2, h2};
    }
    return s;
}

// ---------------------------------------------------------------- series-spec documents

namespace {

using nlohmann::json;

Rational rational_literal(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number()) return parse_rational(j.dump());
    } catch (const std::invalid_argument& e) {
        throw SeriesError(where + ": " + e.what());
    }
    throw SeriesError(where + ": expected a rational literal");
}

Exact scalar_literal(const json& j, const std::string& where) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "re" && it.key() != "im") throw SeriesError(where + ": unexpected key '" + it.key() + "'");
        const Rational re = j.contains("re") ? rational_literal(j["re"], where + ".re") : Rational(0);
        const Rational im = j.contains("im") ? rational_literal(j["im"], where + ".im") : Rational(0);
        return Exact(re, im);
    }
    return Exact(rational_literal(j, where));
}

std::vector<Exact> scalar_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw SeriesError(where + ": expected an array");
    std::vector<Exact> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_literal(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw SeriesError(where + ": missing field '" + key + "'");
    return j[key];
}

std::map<std::string, std::string> params_of(const json& j, const std::string& where) {
    std::map<std::string, std::string> out;
    if (!j.contains("params")) return out;
    const json& p = j["params"];
    if (!p.is_object()) throw SeriesError(where + ".params: expected an object");
    for (auto it = p.begin(); it != p.end(); ++it) out[it.key()] = it->is_string() ? it->get<std::string>() : it->dump();
    return out;
}

SystemOfSeries parse_node(const json& j, const std::string& where);

PowerSeries single(const json& j, const std::string& where) {
    SystemOfSeries s = parse_node(j, where);
    if (j.contains("component")) {
        const json& c = j["component"];
        if (!c.is_number_integer() || c.get<long long>() < 1 || static_cast<std::size_t>(c.get<long long>()) > s.size())
            throw SeriesError(where + ".component: out of range");
        return s.components[static_cast<std::size_t>(c.get<long long>()) - 1];
    }
    if (s.size() != 1) throw SeriesError(where + ": a system with several components needs a 'component' index");
    return s.components.front();
}

SystemOfSeries parse_node(const json& j, const std::string& where) {
    if (!j.is_object()) throw SeriesError(where + ": expected an object");
    const json& kind_node = field(j, "kind", where);
    if (!kind_node.is_string()) throw SeriesError(where + ".kind: expected a string");
    const std::string kind = kind_node.get<std::string>();

    if (kind == "catalog") {
        const json& name = field(j, "name", where);
        if (!name.is_string()) throw SeriesError(where + ".name: expected a string");
        return catalog(name.get<std::string>(), params_of(j, where));
    }
    if (kind == "system") {
        const json& parts = field(j, "components", where);
        if (!parts.is_array() || parts.empty()) throw SeriesError(where + ".components: expected a nonempty array");
        SystemOfSeries s{"system", {}};
        for (std::size_t i = 0; i < parts.size(); ++i) s.components.push_back(single(parts[i], where + ".components[" + std::to_string(i) + "]"));
        return s;
    }

    PowerSeries series = [&]() -> PowerSeries {
        if (kind == "rational") {
            const auto num = scalar_list(field(j, "num", where), where + ".num");
            const auto den = scalar_list(field(j, "den", where), where + ".den");
            return rational_series(P(num), P(den));
        }
        if (kind == "logshift") return log_shift_series(scalar_literal(field(j, "a", where), where + ".a"));
        if (kind == "coeffs") return polynomial_series(scalar_list(field(j, "values", where), where + ".values"));
        if (kind == "sum") {
            const json& terms = field(j, "terms", where);
            if (!terms.is_array()) throw SeriesError(where + ".terms: expected an array");
            std::vector<SeriesTerm> parts;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string w = where + ".terms[" + std::to_string(i) + "]";
                const json& t = terms[i];
                if (t.is_object() && t.contains("series"))
                    parts.push_back({t.contains("weight") ? scalar_literal(t["weight"], w + ".weight") : Exact(1), single(t["series"], w + ".series")});
                else
                    parts.push_back({Exact(1), single(t, w)});
            }
            return combine(parts);
        }
        throw SeriesError(where + ".kind: unknown kind '" + kind + "'");
    }();
    return SystemOfSeries{kind, {std::move(series)}};
}

}  // namespace

SystemOfSeries parse_series_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SeriesError(std::string("malformed JSON: ") + e.what());
    }
    return parse_node(doc, "series");
}

}  // namespace rowpade
