#include "rowpade/rows.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace rowpade {

namespace {

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace

RowSource RowSource::scalar(PowerSeries f, int m, std::optional<int> mstar, IncompleteSelector selector) {
    RowSource s;
    s.kind = Kind::scalar;
    s.series = std::move(f);
    s.m = m;
    s.mstar = mstar.value_or(m);
    s.selector = std::move(selector);
    if (!(m >= s.mstar && s.mstar >= 0)) throw std::invalid_argument("need m >= mstar >= 0");
    return s;
}

RowSource RowSource::simultaneous(SystemOfSeries system, MultiIndex mindex, std::size_t component) {
    if (system.size() != mindex.size()) throw std::invalid_argument("multi-index length differs from the number of components");
    if (component < 1 || component > system.size()) throw std::out_of_range("component index out of range");
    RowSource s;
    s.kind = Kind::system;
    s.system = std::move(system);
    s.mindex = std::move(mindex);
    s.component = component;
    return s;
}

int RowSource::degree() const { return kind == Kind::scalar ? m : mindex->total(); }

int RowSource::conditions() const { return kind == Kind::scalar ? mstar : (*mindex)[component - 1]; }

int RowSource::min_n() const { return kind == Kind::scalar ? m : mindex->max_part(); }

const PowerSeries& RowSource::target() const { return kind == Kind::scalar ? *series : (*system)[component - 1]; }

std::vector<KnownPole> RowSource::reference_poles() const {
    std::vector<KnownPole> out;
    auto add = [&](const PowerSeries& f) {
        if (!f.analytics()) return;
        for (const auto& p : f.analytics()->poles) {
            auto it = std::find_if(out.begin(), out.end(), [&](const KnownPole& q) { return std::abs(q.location - p.location) < 1e-12; });
            if (it == out.end())
                out.push_back(p);
            else
                it->order = std::max(it->order, p.order);
        }
    };
    if (kind == Kind::scalar)
        add(*series);
    else
        for (const auto& f : system->components) add(f);
    return out;
}

std::string RowSource::describe() const {
    std::ostringstream os;
    if (kind == Kind::scalar)
        os << series->description() << ", m=" << m << ", m*=" << mstar;
    else
        os << system->name << ", multi-index " << mindex->to_string() << ", component " << component;
    return os.str();
}

template <class S>
RowSequence<S>::RowSequence(RowSource source, int n_min, int n_max, Context ctx, std::vector<PadeApproximant<S>> views,
                            std::vector<HermitePadeApproximant<S>> hermite)
    : source_(std::move(source)), n_min_(n_min), n_max_(n_max), ctx_(ctx), views_(std::move(views)), hermite_(std::move(hermite)) {}

template <class S>
std::size_t RowSequence<S>::index(int n) const {
    if (!contains(n)) throw std::out_of_range("n = " + std::to_string(n) + " outside the row");
    return static_cast<std::size_t>(n - n_min_);
}

template <class S>
const PadeApproximant<S>& RowSequence<S>::member(int n) const {
    return views_[index(n)];
}

template <class S>
const HermitePadeApproximant<S>& RowSequence<S>::simultaneous(int n) const {
    if (hermite_.empty()) throw std::logic_error("scalar row has no simultaneous approximants");
    return hermite_[index(n)];
}

template <class S>
const RootSet& RowSequence<S>::zeros(int n) const {
    return hermite_.empty() ? member(n).zeros : simultaneous(n).zeros;
}

template <class S>
Polynomial<Float> RowSequence<S>::canonical_denominator(int n) const {
    return hermite_.empty() ? member(n).canonical_denominator() : simultaneous(n).canonical_denominator();
}

template <class S>
Float RowSequence<S>::denominator_at(int n, const Float& a) const {
    return hermite_.empty() ? member(n).denominator_at(a) : simultaneous(n).denominator_at(a);
}

template <class S>
RowSequence<S> RowSequence<S>::with_component(std::size_t k) const {
    if (hermite_.empty()) throw std::logic_error("scalar row has no other components");
    RowSource source = RowSource::simultaneous(*source_.system, *source_.mindex, k);
    std::vector<PadeApproximant<S>> views;
    for (const auto& h : hermite_) views.push_back(component_view(h, k, ctx_));
    return RowSequence(std::move(source), n_min_, n_max_, ctx_, std::move(views), hermite_);
}

template <class S>
RowSequence<S> build_row(const RowSource& source, int n_min, int n_max, const Context& ctx, unsigned jobs) {
    if (n_min < source.min_n()) throw std::invalid_argument("row must start at n >= " + std::to_string(source.min_n()));
    if (n_max < n_min) throw std::invalid_argument("empty n range");
    const auto count = static_cast<std::size_t>(n_max - n_min + 1);
    std::vector<PadeApproximant<S>> views(count);
    std::vector<HermitePadeApproximant<S>> hermite(source.kind == RowSource::Kind::system ? count : 0);
    parallel_for(count, jobs, [&](std::size_t i) {
        const int n = n_min + static_cast<int>(i);
        if (source.kind == RowSource::Kind::scalar) {
            views[i] = compute_incomplete<S>(*source.series, n, source.m, source.mstar, source.selector, ctx);
        } else {
            hermite[i] = compute_hermite<S>(*source.system, n, *source.mindex, ctx);
            views[i] = component_view(hermite[i], source.component, ctx);
        }
    });
    return RowSequence<S>(source, n_min, n_max, ctx, std::move(views), std::move(hermite));
}

namespace {

// Q_n P_{n+1} - Q_{n+1} P_n, shifted up by lambda_n + lambda_{n+1}.
template <class S>
Polynomial<S> cross_difference(const PadeApproximant<S>& a, const PadeApproximant<S>& b) {
    return shifted_up(a.Q * b.P - b.Q * a.P, a.lambda + b.lambda);
}

Real cross_scale(const PadeApproximant<Float>& a, const PadeApproximant<Float>& b) {
    return coefficient_scale(a.Q) * coefficient_scale(b.P) + coefficient_scale(b.Q) * coefficient_scale(a.P);
}

}  // namespace

template <class S>
TelescopeTerm<S> telescope(const RowSequence<S>& row, int n) {
    if (!row.contains(n) || !row.contains(n + 1)) throw std::out_of_range("telescope needs n and n+1 in the row");
    const auto& a = row.member(n);
    const auto& b = row.member(n + 1);
    const int limit = row.source().degree() - row.source().conditions();
    Polynomial<S> D = cross_difference(a, b);

    std::vector<S> high;
    if constexpr (std::is_same_v<S, Exact>) {
        for (int k = 0; k <= std::min(n, D.degree()); ++k)
            if (!D[static_cast<std::size_t>(k)].is_zero()) throw TelescopeError("telescoping identity violated");
        high = shifted_down(D, static_cast<std::size_t>(n) + 1).coefficients();
    } else {
        const Real bound = mp::sqrt(row.context().tolerance()) * cross_scale(a, b);
        for (int k = 0; k <= std::min(n, D.degree()); ++k)
            if (abs(D[static_cast<std::size_t>(k)]) > bound) throw TelescopeError("telescoping identity violated");
        high = shifted_down(D, static_cast<std::size_t>(n) + 1).coefficients();
        for (std::size_t k = static_cast<std::size_t>(std::max(limit, -1) + 1); k < high.size(); ++k) {
            if (abs(high[k]) > bound) throw TelescopeError("telescoping identity violated");
            high[k] = S(0);
        }
    }

    TelescopeTerm<S> t;
    t.n = n;
    const Polynomial<S> rest(std::move(high));
    if (rest.is_zero()) {
        t.A = Float(0);
        t.A_exact = Exact(0);
        t.q = Polynomial<S>::constant(S(1));
        return t;
    }
    auto canon = canonical_form(rest, row.context());
    t.q = std::move(canon.poly);
    t.q_scale = canon.scale;
    t.deg_q = t.q.degree();
    // rest = (q_scale q) / (factor q_scale); canonical members carry their scales.
    t.A = a.scale * b.scale / (to_float(canon.factor) * canon.scale);
    if constexpr (std::is_same_v<S, Exact>) {
        if (a.canonical_exact && b.canonical_exact && canon.exact) t.A_exact = Exact(1) / canon.factor;
    }
    return t;
}

namespace {

struct LineFit {
    double slope = 0;
    double residual = 0;
    std::size_t points = 0;
};

std::optional<LineFit> line_fit(const std::vector<std::pair<int, double>>& data) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, v] : data)
        if (v > 0 && std::isfinite(v)) pts.emplace_back(n, std::log(v));
    if (pts.size() < 4) return std::nullopt;
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) sx += x, sy += y;
    const double k = static_cast<double>(pts.size());
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
    LineFit f;
    f.slope = sxy / sxx;
    f.points = pts.size();
    double ss = 0;
    for (const auto& [x, y] : pts) {
        const double r = y - (my + f.slope * (x - mx));
        ss += r * r;
    }
    f.residual = std::sqrt(ss / k);
    return f;
}

double tail_max(const std::vector<std::pair<int, double>>& data) {
    double best = 0;
    for (const auto& [n, v] : data)
        if (n > 0 && v > 0) best = std::max(best, std::pow(v, 1.0 / n));
    return best;
}

std::vector<std::pair<int, double>> parity(const std::vector<std::pair<int, double>>& data, int r) {
    std::vector<std::pair<int, double>> out;
    for (const auto& e : data)
        if (((e.first % 2) + 2) % 2 == r) out.push_back(e);
    return out;
}

RateFit fit_impl(const std::map<int, double>& values, const FitOptions& options, bool lenient) {
    if (values.empty()) throw InsufficientData("insufficient data: no values");
    RateFit fit;
    fit.values = values;
    const int first = values.begin()->first;
    const int last = values.rbegin()->first;
    fit.window = options.window.value_or(std::pair{first + (last - first + 1) / 3, last});
    std::vector<std::pair<int, double>> data;
    for (const auto& [n, v] : values)
        if (n >= fit.window.first && n <= fit.window.second) data.emplace_back(n, v);
    if (options.subsequence == Subsequence::even) {
        data = parity(data, 0);
        fit.subsequence = "even";
    } else if (options.subsequence == Subsequence::odd) {
        data = parity(data, 1);
        fit.subsequence = "odd";
    }
    if (data.empty()) throw InsufficientData("insufficient data: empty window");
    if (std::none_of(data.begin(), data.end(), [](const auto& e) { return e.second > 0; })) {
        fit.all_zero = true;
        fit.estimator = "zero";
        return fit;
    }

    auto chosen = data;
    auto line = line_fit(data);
    if (options.subsequence == Subsequence::automatic) {
        const auto even = parity(data, 0), odd = parity(data, 1);
        const auto fe = line_fit(even), fo = line_fit(odd);
        auto take = [&](const std::vector<std::pair<int, double>>& d, const std::optional<LineFit>& f, const char* label) {
            chosen = d;
            line = f;
            fit.subsequence = label;
        };
        if (fe && fo) {
            if (line && line->residual > 1.5 * std::max(fe->residual, fo->residual) + 1e-3) {
                if (fe->slope >= fo->slope)
                    take(even, fe, "even");
                else
                    take(odd, fo, "odd");
            }
        } else if (fe) {
            take(even, fe, "even");
        } else if (fo) {
            take(odd, fo, "odd");
        }
    }
    fit.tail_max_rate = tail_max(chosen);
    if (!line) {
        if (!lenient) throw InsufficientData("insufficient data: fewer than 4 positive values in the window");
        fit.estimator = "tail-max";
        fit.regression_rate = fit.tail_max_rate;
        fit.points = static_cast<std::size_t>(std::count_if(chosen.begin(), chosen.end(), [](const auto& e) { return e.second > 0; }));
        return fit;
    }
    fit.regression_rate = std::exp(line->slope);
    fit.residual = line->residual;
    fit.points = line->points;
    return fit;
}

}  // namespace

RateFit fit_rate(const std::map<int, double>& values, const FitOptions& options) { return fit_impl(values, options, false); }

template <class S>
RadiusEstimate estimate_rstar(const RowSequence<S>& row, const FitOptions& options) {
    if (row.n_max() - row.n_min() < 8) throw InsufficientData("insufficient data: need at least 8 telescope terms");
    RadiusEstimate r;
    for (int n = row.n_min(); n < row.n_max(); ++n) r.per_n[n] = to_double(abs(telescope(row, n).A));
    r.fit = fit_rate(r.per_n, options);
    r.regression_rate = r.fit.regression_rate;
    r.tail_max_rate = r.fit.tail_max_rate;
    r.estimator_used = r.fit.estimator + (r.fit.subsequence == "all" ? "" : " (" + r.fit.subsequence + " n)");
    r.rstar = r.fit.all_zero || r.regression_rate <= 0 ? std::numeric_limits<double>::infinity() : 1.0 / r.regression_rate;
    return r;
}

template <class S>
double delta_indicator(const RowSequence<S>& row, const Float& a, const IndicatorOptions& options, RateFit* fit) {
    std::map<int, double> values;
    for (int n = row.n_min(); n <= row.n_max(); ++n) values[n] = to_double(abs(row.denominator_at(n, a)));
    RateFit f = fit_impl(values, options.fit, true);
    const double rate = f.regression_rate;
    if (fit) *fit = std::move(f);
    return std::clamp(rate, 0.0, 1.0);
}

template <class S>
std::vector<double> delta_j_indicators(const RowSequence<S>& row, const Float& a, const IndicatorOptions& options,
                                       std::vector<RateFit>* fits, int* mprime) {
    const Real floor = mp::sqrt(row.context().tolerance());
    std::map<int, std::vector<double>> distances;
    for (int n = row.n_min(); n <= row.n_max(); ++n) {
        std::vector<Real> d;
        for (const auto& z : row.zeros(n).expanded()) d.push_back(abs(z - a));
        std::sort(d.begin(), d.end());
        auto& out = distances[n];
        for (const auto& x : d) out.push_back(x <= floor ? 0.0 : std::min(1.0, to_double(x)));
    }
    const int first = row.n_min(), last = row.n_max();
    const auto window = options.fit.window.value_or(std::pair{first + (last - first + 1) / 3, last});
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (const auto& [n, d] : distances)
        if (n >= window.first && n <= window.second) fewest = std::min(fewest, d.size());
    if (fewest == std::numeric_limits<std::size_t>::max()) fewest = 0;

    const int m = row.source().degree();
    std::vector<double> delta(static_cast<std::size_t>(m), 1.0);
    if (fits) fits->clear();
    double running = 0;
    for (std::size_t j = 0; j < fewest && j < delta.size(); ++j) {
        std::map<int, double> values;
        for (const auto& [n, d] : distances) values[n] = d[j];
        RateFit f = fit_impl(values, options.fit, true);
        running = std::max(running, std::clamp(f.regression_rate, 0.0, 1.0));
        delta[j] = running;
        if (fits) fits->push_back(std::move(f));
    }
    if (mprime) *mprime = static_cast<int>(fewest);
    return delta;
}

int mu_indicator(const IndicatorReport& report, double decision_tol) {
    if (report.delta_big >= 1 - decision_tol) return 0;
    return static_cast<int>(std::count_if(report.delta_j.begin(), report.delta_j.end(), [&](double d) { return d < 1 - decision_tol; }));
}

template <class S>
IndicatorReport indicator_report(const RowSequence<S>& row, const Float& a, const IndicatorOptions& options) {
    IndicatorReport r;
    r.a = a;
    r.delta_big = delta_indicator(row, a, options, &r.delta_fit);
    r.delta_big_raw = r.delta_fit.regression_rate;
    r.delta_j = delta_j_indicators(row, a, options, &r.delta_j_fits, &r.mprime);
    r.mu = mu_indicator(r, options.decision_tol);
    return r;
}

CompactSet CompactSet::circle(double radius, std::size_t points, std::complex<double> center) {
    if (!(radius > 0) || points == 0) throw std::invalid_argument("circle needs r > 0 and points > 0");
    CompactSet K;
    const Real pi = mp::acos(Real(-1));
    for (std::size_t k = 0; k < points; ++k) {
        const Real t = 2 * pi * Real(k) / Real(points);
        K.points.emplace_back(Real(center.real()) + Real(radius) * mp::cos(t), Real(center.imag()) + Real(radius) * mp::sin(t));
    }
    std::ostringstream os;
    os << "circle r=" << radius;
    if (center != std::complex<double>(0)) os << " center=(" << center.real() << "," << center.imag() << ")";
    os << ", " << points << " points";
    K.label = os.str();
    return K;
}

CompactSet CompactSet::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (kind != "circle") throw std::invalid_argument("unknown compact kind '" + kind + "'");
    double r = 1, cx = 0, cy = 0;
    long points = 512;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("malformed compact option '" + item + "'");
            const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
            try {
                std::size_t used = 0;
                if (key == "r")
                    r = std::stod(value, &used);
                else if (key == "cx")
                    cx = std::stod(value, &used);
                else if (key == "cy")
                    cy = std::stod(value, &used);
                else if (key == "points")
                    points = std::stol(value, &used);
                else
                    throw std::invalid_argument("unknown compact option '" + key + "'");
                if (used != value.size()) throw std::invalid_argument("malformed compact option '" + item + "'");
            } catch (const std::logic_error&) {
                throw std::invalid_argument("malformed compact option '" + item + "'");
            }
        }
    }
    if (points <= 0) throw std::invalid_argument("compact needs points > 0");
    return circle(r, static_cast<std::size_t>(points), {cx, cy});
}

template <class S>
CompactSet exclude(const CompactSet& K, const RowSequence<S>& row, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
    const double m = row.source().degree();
    std::vector<std::pair<Float, Real>> disks;
    for (int n = row.n_min(); n <= row.n_max(); ++n)
        for (const auto& z : row.zeros(n).roots) disks.emplace_back(z.value, Real(eps / (6 * m * n * n)));
    for (const auto& p : row.source().reference_poles())
        disks.emplace_back(Float(Real(p.location.real()), Real(p.location.imag())), Real(eps / (6 * m)));
    CompactSet out;
    out.epsilon = eps;
    for (const auto& z : K.points) {
        const bool hit = std::any_of(disks.begin(), disks.end(), [&](const auto& d) { return abs(z - d.first) < d.second; });
        if (!hit) out.points.push_back(z);
    }
    out.excluded = K.excluded + (K.points.size() - out.points.size());
    std::ostringstream os;
    os << K.label << ", eps=" << eps;
    out.label = os.str();
    return out;
}

namespace {

Float evaluate_target(const PowerSeries& f, const Float& z, const Context& ctx) {
    if (f.has_evaluator()) return f.evaluate(z);
    if (!f.analytics()) throw std::domain_error("series has no evaluator");
    const double R = f.analytics()->radius(0);
    const double r = to_double(abs(z));
    if (!(r <= R / 2)) throw std::domain_error("series has no evaluator and the point lies outside the safe truncation disk");
    const std::size_t terms = r == 0 ? 1 : static_cast<std::size_t>(std::ceil(ctx.precision_bits / std::log2(R / r))) + 8;
    Float acc(0);
    for (std::size_t k = terms; k-- > 0;) acc = acc * z + f.coeff_float(k);
    return acc;
}

}  // namespace

template <class S>
Real sup_error(const RowSequence<S>& row, int n, const CompactSet& K) {
    if (K.points.empty()) throw std::domain_error("compact fully excluded");
    const auto& a = row.member(n);
    const auto& f = row.source().target();
    Real best(0);
    for (const auto& z : K.points) {
        const Real e = abs(evaluate_target(f, z, row.context()) - a.value_at(z));
        if (e > best) best = e;
    }
    return best;
}

Real coeff_norm_diff(const Polynomial<Float>& target, const Polynomial<Float>& q) {
    Real best(0);
    for (std::size_t k = 0; k < std::max(target.size(), q.size()); ++k) {
        const Real d = abs(target[k] - q[k]);
        if (d > best) best = d;
    }
    return best;
}

std::size_t assign_k(const std::vector<ComponentPoleData>& components, std::complex<double> a, double tol) {
    std::size_t best = 0;
    unsigned best_order = 0;
    double best_r = 0;
    bool pole_somewhere = false;
    for (std::size_t k = 0; k < components.size(); ++k) {
        unsigned order = 0;
        for (const auto& p : components[k].poles)
            if (std::abs(p.location - a) <= tol * std::max(1.0, std::abs(a))) order = std::max(order, p.order);
        if (order == 0) continue;
        pole_somewhere = true;
        if (!(std::abs(a) < components[k].rstar)) continue;
        if (order > best_order || (order == best_order && components[k].rstar > best_r)) {
            best = k + 1;
            best_order = order;
            best_r = components[k].rstar;
        }
    }
    if (!pole_somewhere) throw std::invalid_argument("point is not a pole of any component");
    if (best == 0) throw std::invalid_argument("point is a pole, but outside every component's convergence disk");
    return best;
}

template class RowSequence<Exact>;
template class RowSequence<Float>;

#define ROWPADE_ROWS_INSTANTIATE(S)                                                                                      \
    template RowSequence<S> build_row<S>(const RowSource&, int, int, const Context&, unsigned);                         \
    template TelescopeTerm<S> telescope(const RowSequence<S>&, int);                                                    \
    template RadiusEstimate estimate_rstar(const RowSequence<S>&, const FitOptions&);                                   \
    template double delta_indicator(const RowSequence<S>&, const Float&, const IndicatorOptions&, RateFit*);            \
    template std::vector<double> delta_j_indicators(const RowSequence<S>&, const Float&, const IndicatorOptions&,       \
                                                    std::vector<RateFit>*, int*);                                       \
    template IndicatorReport indicator_report(const RowSequence<S>&, const Float&, const IndicatorOptions&);            \
    template CompactSet exclude(const CompactSet&, const RowSequence<S>&, double);                                      \
    template Real sup_error(const RowSequence<S>&, int, const CompactSet&);

ROWPADE_ROWS_INSTANTIATE(Exact)
ROWPADE_ROWS_INSTANTIATE(Float)

}  // namespace rowpade
