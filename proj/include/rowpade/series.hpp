#ifndef ROWPADE_SERIES_HPP
#define ROWPADE_SERIES_HPP

#include "rowpade/complex.hpp"
#include "rowpade/polynomial.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rowpade {

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sum of w * log(a) terms with exact weights and arguments. Stands in for the
/// irrational constant term of a log series in exact mode.
class OpaqueConstant {
public:
    struct Term {
        Exact weight;
        Exact argument;
    };

    OpaqueConstant() = default;
    static OpaqueConstant log_of(const Exact& argument, const Exact& weight = Exact(1));

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Principal-branch value at the active precision.
    Float value() const;
    std::string to_string() const;

    OpaqueConstant& operator+=(const OpaqueConstant& o);
    OpaqueConstant& operator*=(const Exact& s);
    friend OpaqueConstant operator+(OpaqueConstant a, const OpaqueConstant& b) { return a += b; }
    friend OpaqueConstant operator*(OpaqueConstant a, const Exact& s) { return a *= s; }
    friend bool operator==(const OpaqueConstant& a, const OpaqueConstant& b);

private:
    void add(const Exact& weight, const Exact& argument);
    std::vector<Term> terms_;
};

/// f(z) = N(z)/D(z) + sum_i w_i log(a_i - z), principal branch.
struct ClosedForm {
    Polynomial<Exact> numerator = Polynomial<Exact>::constant(Exact(0));
    Polynomial<Exact> denominator = Polynomial<Exact>::constant(Exact(1));
    std::vector<OpaqueConstant::Term> logs;  // weight, branch point a

    /// Cancels common factors and merges log terms with equal branch points.
    void simplify();
    Float evaluate(const Float& z) const;
};

struct KnownPole {
    std::complex<double> location;
    unsigned order = 1;
};

/// Ground truth about the function behind a series, when it is known.
struct ReferenceAnalytics {
    std::vector<KnownPole> poles;
    /// radii[m] = R_m; the last entry holds for every larger m. May be +inf.
    std::vector<double> radii;
    std::function<Float(const Float&)> evaluator;

    double radius(std::size_t m) const;
    /// Order of the pole at a (within tol), 0 if a is not a known pole.
    unsigned pole_order(std::complex<double> a, double tol = 1e-9) const;
};

/// Formal Taylor series sum_k phi_k z^k with lazily memoized coefficients.
/// Coefficients are exact. A log component contributes an irrational phi_0,
/// kept apart as an OpaqueConstant: coeff(0) returns only the rational part.
class PowerSeries {
public:
    /// Produces phi_k given phi_0..phi_{k-1} (rational parts).
    using Generator = std::function<Exact(std::size_t k, const std::vector<Exact>& previous)>;

    PowerSeries(Generator generator, std::string description, OpaqueConstant constant = {});
    explicit PowerSeries(ClosedForm form, std::string description = {});

    Exact coeff(std::size_t k) const;
    /// phi_0 .. phi_{count-1}
    std::vector<Exact> coeffs(std::size_t count) const;
    /// Float coefficient including the opaque constant at k = 0.
    Float coeff_float(std::size_t k) const;

    const OpaqueConstant& opaque() const { return constant_; }
    const std::string& description() const { return description_; }
    const std::optional<ClosedForm>& closed_form() const { return form_; }
    const std::optional<ReferenceAnalytics>& analytics() const { return analytics_; }
    bool has_evaluator() const { return analytics_ && analytics_->evaluator; }
    Float evaluate(const Float& z) const;

    void set_analytics(ReferenceAnalytics a) { analytics_ = std::move(a); }

private:
    struct Memo {
        std::mutex mutex;
        std::vector<Exact> values;
        Generator generator;
    };

    std::shared_ptr<Memo> memo_;
    std::string description_;
    OpaqueConstant constant_;
    std::optional<ClosedForm> form_;
    std::optional<ReferenceAnalytics> analytics_;
};

/// Ordered list of components sharing one arithmetic mode.
struct SystemOfSeries {
    std::string name;
    std::vector<PowerSeries> components;

    std::size_t size() const { return components.size(); }
    const PowerSeries& operator[](std::size_t j) const { return components.at(j); }
};

/// Expansion of P/Q; throws SeriesError("series not defined at origin") if Q(0) = 0.
PowerSeries rational_series(const Polynomial<Exact>& P, const Polynomial<Exact>& Q);
/// Expansion of log(a - z).
PowerSeries log_shift_series(const Exact& a);
/// Polynomial with the given coefficients (all later ones zero).
PowerSeries polynomial_series(const std::vector<Exact>& values);

struct SeriesTerm {
    Exact weight;
    PowerSeries series;
};

/// sum_i weight_i * series_i. Exact closed forms combine exactly (so cancelling
/// poles disappear from the metadata); otherwise poles are kept only when no
/// location is shared between terms.
PowerSeries combine(const std::vector<SeriesTerm>& terms);
PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const Exact& s, const PowerSeries& f);

/// Names accepted by catalog().
std::vector<std::string> catalog_names();
/// One-line description of a catalog entry.
std::string catalog_description(const std::string& name);
/// The example systems. Params are exact literals ("2", "5/2").
SystemOfSeries catalog(const std::string& name, const std::map<std::string, std::string>& params = {});

/// Builds a system from a series-spec JSON document. A catalog document yields
/// the whole named system; every other kind yields one component.
SystemOfSeries parse_series_spec(const std::string& json_text);

}  // namespace rowpade

#endif
