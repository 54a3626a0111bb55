#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

using complexd = std::complex<double>;

/// 2x2 complex matrix, row-major. Small enough to live on the stack.
struct Mat2c {
    complexd a11{}, a12{}, a21{}, a22{};

    friend Mat2c operator*(const Mat2c& x, const Mat2c& y) {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
    }
    std::pair<complexd, complexd> apply(complexd u, complexd v) const {
        return {a11 * u + a12 * v, a21 * u + a22 * v};
    }
    static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline double max_abs_entry(const Mat2c& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}

/// Problem constants shared by every module.
struct Params {
    double nu = 0.5;  ///< viscosity, > 0
    int N = 4;        ///< truncation order of the spectral reduction
    int m = 5;        ///< weight exponent of the L^2(m) norms
    double M = 1.0;   ///< target decay order in the error bound

    double nu_T() const { return nu + 1.0 / nu; }

    void validate() const {
        if (!(nu > 0.0)) throw std::invalid_argument("Params: nu must be positive");
        if (N < 0) throw std::invalid_argument("Params: N must be non-negative");
        if (m < 0) throw std::invalid_argument("Params: m must be non-negative");
    }
    /// Weight condition required before asking for projections up to index N.
    void require_projection_weight() const {
        if (!(m > N + 0.5))
            throw std::invalid_argument("Params: projections up to N need m > N + 1/2");
    }
    /// Truncation condition for the error-scaling experiments.
    void require_error_scaling() const {
        require_projection_weight();
        if (!(N >= 4.0 * M))
            throw std::invalid_argument("Params: error-scaling experiments need N >= 4M");
    }
};

}  // namespace dlab
