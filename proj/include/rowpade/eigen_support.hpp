#ifndef ROWPADE_EIGEN_SUPPORT_HPP
#define ROWPADE_EIGEN_SUPPORT_HPP

#include "rowpade/complex.hpp"

#include <Eigen/Core>

namespace Eigen {

// Complex<R> is handed to Eigen as an opaque field element: Eigen only stores it
// and forms sums and products; every decomposition in rowpade is hand written.
template <class R>
struct NumTraits<rowpade::Complex<R>> : GenericNumTraits<rowpade::Complex<R>> {
    using Real = rowpade::Complex<R>;
    using NonInteger = rowpade::Complex<R>;
    using Nested = rowpade::Complex<R>;
    using Literal = rowpade::Complex<R>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace rowpade {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

}  // namespace rowpade

#endif
