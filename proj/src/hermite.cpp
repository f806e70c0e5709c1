#include "rowpade/hermite.hpp"

#include "rowpade/nullspace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rowpade {

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("multi-index needs at least one part");
    for (int p : parts_)
        if (p < 0) throw std::invalid_argument("multi-index parts must be nonnegative");
    total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    if (total_ == 0) throw std::invalid_argument("multi-index parts must not all be zero");
}

MultiIndex MultiIndex::parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed multi-index '" + text + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument("malformed multi-index '" + text + "'");
        parts.push_back(v);
    }
    return MultiIndex(std::move(parts));
}

int MultiIndex::max_part() const { return *std::max_element(parts_.begin(), parts_.end()); }

std::string MultiIndex::to_string() const {
    std::string out;
    for (std::size_t j = 0; j < parts_.size(); ++j) out += (j ? "," : "") + std::to_string(parts_[j]);
    return out;
}

template <class S>
Float HermitePadeApproximant<S>::denominator_at(const Float& z) const {
    return scale * eval_float(Q, z);
}

template <class S>
Float HermitePadeApproximant<S>::value_at(std::size_t j, const Float& z) const {
    const Float q = eval_float(Q, z);
    Float p = eval_float(P.at(j), z);
    if (!offsets.at(j).is_zero()) p += offsets[j].value() * q;
    return p / q;
}

template <class S>
Polynomial<Float> HermitePadeApproximant<S>::canonical_denominator() const {
    return to_float(Q) * scale;
}

template <class S>
HermitePadeApproximant<S> compute_hermite(const SystemOfSeries& system, int n, const MultiIndex& mindex, const Context& ctx) {
    if (system.size() != mindex.size()) throw std::invalid_argument("multi-index length differs from the number of components");
    if (n < mindex.max_part()) throw std::invalid_argument("need n >= max part of the multi-index");
    const int total = mindex.total();
    const auto count = static_cast<std::size_t>(n) + 1;

    HermitePadeApproximant<S> h;
    h.n = n;
    h.mindex = mindex;
    std::vector<std::vector<S>> phi;
    Matrix<S> M(total, total + 1);
    Eigen::Index row = 0;
    for (std::size_t j = 0; j < system.size(); ++j) {
        OpaqueConstant offset;
        phi.push_back(series_coefficients<S>(system[j], count, &offset));
        const int mj = mindex[j];
        if (!offset.is_zero() && mj > 0 && n - mj + 1 <= total)
            throw OpaqueValueNeeded("exact mode: the conditions for component " + std::to_string(j + 1) +
                                    " involve the irrational constant term; use float mode or larger n");
        h.offsets.push_back(std::move(offset));
        if (mj == 0) continue;
        M.middleRows(row, mj) = condition_rows(phi.back(), n, mj, total + 1);
        row += mj;
    }
    const auto v = nullspace_vector(M).vector;
    h.Qraw = Polynomial<S>(std::vector<S>(v.data(), v.data() + v.size()));
    for (std::size_t j = 0; j < system.size(); ++j) h.Praw.push_back(truncated(h.Qraw * Polynomial<S>(phi[j]), n - mindex[j]));

    auto red = reduce_and_normalize(h.Qraw, h.Praw, ctx);
    h.Q = std::move(red.Q);
    h.P = std::move(red.P);
    h.lambda = red.lambda;
    h.scale = red.scale;
    h.canonical_exact = red.canonical_exact;
    h.zeros = std::move(red.zeros);
    return h;
}

template <class S>
PadeApproximant<S> component_view(const HermitePadeApproximant<S>& h, std::size_t k, const Context& ctx) {
    if (k < 1 || k > h.mindex.size()) throw std::out_of_range("component index out of range");
    PadeApproximant<S> a;
    a.n = h.n;
    a.m = h.mindex.total();
    a.mstar = h.mindex[k - 1];
    a.Qraw = h.Qraw;
    a.Praw = h.Praw[k - 1];
    a.offset = h.offsets[k - 1];
    auto red = reduce_and_normalize(a.Qraw, a.Praw, ctx, false);
    a.Q = std::move(red.Q);
    a.P = std::move(red.P.front());
    a.lambda = red.lambda;
    a.scale = red.scale;
    a.canonical_exact = red.canonical_exact;
    a.zeros = std::move(red.zeros);
    return a;
}

template struct HermitePadeApproximant<Exact>;
template struct HermitePadeApproximant<Float>;
template HermitePadeApproximant<Exact> compute_hermite<Exact>(const SystemOfSeries&, int, const MultiIndex&, const Context&);
template HermitePadeApproximant<Float> compute_hermite<Float>(const SystemOfSeries&, int, const MultiIndex&, const Context&);
template PadeApproximant<Exact> component_view(const HermitePadeApproximant<Exact>&, std::size_t, const Context&);
template PadeApproximant<Float> component_view(const HermitePadeApproximant<Float>&, std::size_t, const Context&);

}  // namespace rowpade
