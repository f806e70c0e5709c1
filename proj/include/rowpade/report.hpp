#ifndef ROWPADE_REPORT_HPP
#define ROWPADE_REPORT_HPP

#include "rowpade/hermite.hpp"
#include "rowpade/rows.hpp"

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace rowpade::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kSchemaName = "rowpade-report";

template <class S>
constexpr const char* mode_name() {
    return std::is_same_v<S, Exact> ? "exact" : "float";
}

/// Real numbers as "p/q"; others as {"re": ..., "im": ...}.
json scalar(const Exact& z);
/// Decimal strings with the digits the precision supports.
json scalar(const Float& z, unsigned bits);
/// Finite doubles as numbers, otherwise "+inf", "-inf" or "nan".
json number(double x);
json number(const Real& x);

/// {"mode": ..., "precision_bits": bits or null, <key>: payload}
json tagged(const char* mode, std::optional<unsigned> bits, const char* key, json payload);

template <class S>
json coefficients(const Polynomial<S>& p, unsigned bits);

json zeros(const RootSet& zs, unsigned bits);
json rate_fit(const RateFit& fit);
json indicators(const IndicatorReport& r, unsigned bits);

/// Q, P, lambda and zeros of one approximant.
template <class S>
json approximant(const PadeApproximant<S>& a, unsigned bits);
template <class S>
json simultaneous(const HermitePadeApproximant<S>& h, unsigned bits);
template <class S>
json telescope_term(const TelescopeTerm<S>& t, unsigned bits);

/// Skeleton with schema, command and config.
json document(const std::string& command, json config);

struct CsvRow {
    int n = 0;
    std::string quantity;
    double value = 0;
};

/// Header "n,quantity,value"; rows sorted by n, then quantity.
void write_csv(std::ostream& os, std::vector<CsvRow> rows);

}  // namespace rowpade::report

#endif
