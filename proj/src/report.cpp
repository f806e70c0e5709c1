#include "rowpade/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rowpade::report {

namespace {

int digits_for(unsigned bits) { return static_cast<int>(bits * 301u / 1000u) + 1; }

}  // namespace

json scalar(const Exact& z) {
    if (z.imag() == 0) return to_string(z.real());
    return json{{"re", to_string(z.real())}, {"im", to_string(z.imag())}};
}

json scalar(const Float& z, unsigned bits) {
    const int d = digits_for(bits);
    if (z.imag() == 0) return to_string(z.real(), d);
    return json{{"re", to_string(z.real(), d)}, {"im", to_string(z.imag(), d)}};
}

json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    return x;
}

json number(const Real& x) { return number(x.convert_to<double>()); }

json tagged(const char* mode, std::optional<unsigned> bits, const char* key, json payload) {
    json out{{"mode", mode}};
    out["precision_bits"] = bits ? json(*bits) : json(nullptr);
    out[key] = std::move(payload);
    return out;
}

template <class S>
json coefficients(const Polynomial<S>& p, unsigned bits) {
    json out = json::array();
    for (const auto& c : p.coefficients()) {
        if constexpr (std::is_same_v<S, Exact>)
            out.push_back(scalar(c));
        else
            out.push_back(scalar(c, bits));
    }
    return out;
}

json zeros(const RootSet& zs, unsigned bits) {
    json list = json::array();
    for (const auto& r : zs.roots) {
        json z = scalar(r.value, bits);
        if (!z.is_object()) z = json{{"re", z}, {"im", "0"}};
        z["multiplicity"] = r.multiplicity;
        list.push_back(std::move(z));
    }
    return tagged("float", bits, "values", std::move(list));
}

json rate_fit(const RateFit& fit) {
    json out = tagged("float", 53u, "regression_rate", number(fit.regression_rate));
    out["tail_max_rate"] = number(fit.tail_max_rate);
    out["residual"] = number(fit.residual);
    out["window"] = {fit.window.first, fit.window.second};
    out["points"] = fit.points;
    out["subsequence"] = fit.subsequence;
    out["estimator"] = fit.estimator;
    out["all_zero"] = fit.all_zero;
    return out;
}

json indicators(const IndicatorReport& r, unsigned bits) {
    json out{{"a", scalar(r.a, bits)}};
    out["Delta"] = tagged("float", 53u, "value", number(r.delta_big));
    out["Delta"]["raw"] = number(r.delta_big_raw);
    out["Delta"]["fit"] = rate_fit(r.delta_fit);
    json dj = json::array();
    for (double d : r.delta_j) dj.push_back(number(d));
    out["delta_j"] = tagged("float", 53u, "values", std::move(dj));
    json fits = json::array();
    for (const auto& f : r.delta_j_fits) fits.push_back(rate_fit(f));
    out["delta_j"]["fits"] = std::move(fits);
    out["m_prime"] = r.mprime;
    out["mu"] = r.mu;
    return out;
}

template <class S>
json approximant(const PadeApproximant<S>& a, unsigned bits) {
    const std::optional<unsigned> b = std::is_same_v<S, Exact> ? std::nullopt : std::optional<unsigned>(bits);
    json out{{"n", a.n}, {"m", a.m}, {"mstar", a.mstar}, {"lambda", a.lambda}};
    out["denominator"] = tagged(mode_name<S>(), b, "coefficients", coefficients(a.Q, bits));
    out["denominator"]["canonical_exact"] = a.canonical_exact;
    out["denominator"]["scale"] = scalar(a.scale, bits);
    out["numerator"] = tagged(mode_name<S>(), b, "coefficients", coefficients(a.P, bits));
    if (!a.offset.is_zero()) out["numerator"]["constant_offset"] = a.offset.to_string();
    out["zeros"] = zeros(a.zeros, bits);
    return out;
}

template <class S>
json simultaneous(const HermitePadeApproximant<S>& h, unsigned bits) {
    const std::optional<unsigned> b = std::is_same_v<S, Exact> ? std::nullopt : std::optional<unsigned>(bits);
    json out{{"n", h.n}, {"multi_index", h.mindex.parts()}, {"lambda", h.lambda}};
    out["denominator"] = tagged(mode_name<S>(), b, "coefficients", coefficients(h.Q, bits));
    out["denominator"]["canonical_exact"] = h.canonical_exact;
    out["denominator"]["scale"] = scalar(h.scale, bits);
    json nums = json::array();
    for (std::size_t j = 0; j < h.P.size(); ++j) {
        json p = tagged(mode_name<S>(), b, "coefficients", coefficients(h.P[j], bits));
        if (!h.offsets[j].is_zero()) p["constant_offset"] = h.offsets[j].to_string();
        nums.push_back(std::move(p));
    }
    out["numerators"] = std::move(nums);
    out["zeros"] = zeros(h.zeros, bits);
    return out;
}

template <class S>
json telescope_term(const TelescopeTerm<S>& t, unsigned bits) {
    const std::optional<unsigned> b = std::is_same_v<S, Exact> ? std::nullopt : std::optional<unsigned>(bits);
    json out{{"n", t.n}};
    if (t.A_exact)
        out["A"] = tagged("exact", std::nullopt, "value", scalar(*t.A_exact));
    else
        out["A"] = tagged("float", bits, "value", scalar(t.A, bits));
    out["abs_A"] = tagged("float", bits, "value", scalar(Float(abs(t.A)), bits));
    out["q"] = tagged(mode_name<S>(), b, "coefficients", coefficients(t.q, bits));
    out["q"]["scale"] = scalar(t.q_scale, bits);
    out["deg_q"] = t.deg_q;
    return out;
}

json document(const std::string& command, json config) {
    json out{{"schema", kSchemaName}, {"schema_version", kSchemaVersion}, {"command", command}};
    out["config"] = std::move(config);
    return out;
}

void write_csv(std::ostream& os, std::vector<CsvRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return a.n != b.n ? a.n < b.n : a.quantity < b.quantity;
    });
    os << "n,quantity,value\n";
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        std::string q = r.quantity;
        if (q.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : q) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            q = quoted + "\"";
        }
        os << r.n << ',' << q << ',';
        if (std::isinf(r.value))
            os << (r.value > 0 ? "+inf" : "-inf");
        else
            os << r.value;
        os << '\n';
    }
}

template json coefficients(const Polynomial<Exact>&, unsigned);
template json coefficients(const Polynomial<Float>&, unsigned);
template json approximant(const PadeApproximant<Exact>&, unsigned);
template json approximant(const PadeApproximant<Float>&, unsigned);
template json simultaneous(const HermitePadeApproximant<Exact>&, unsigned);
template json simultaneous(const HermitePadeApproximant<Float>&, unsigned);
template json telescope_term(const TelescopeTerm<Exact>&, unsigned);
template json telescope_term(const TelescopeTerm<Float>&, unsigned);

}  // namespace rowpade::report
