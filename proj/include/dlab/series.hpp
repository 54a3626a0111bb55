#pragma once

#include <vector>

#include "dlab/types.hpp"

namespace dlab {

/// Truncated Taylor series around k = 0: sum_{n<=order} c[n] k^n.
class TaylorSeries {
  public:
    explicit TaylorSeries(int order) : c_(order + 1, complexd(0.0)) {}
    static TaylorSeries constant(int order, complexd v) {
        TaylorSeries s(order);
        s.c_[0] = v;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    complexd& operator[](int n) { return c_[n]; }
    const complexd& operator[](int n) const { return c_[n]; }

    /// j! c_j, the j-th derivative at 0.
    complexd derivative_at_zero(int j) const;

    TaylorSeries& operator+=(const TaylorSeries& o);
    TaylorSeries& operator-=(const TaylorSeries& o);
    TaylorSeries& operator*=(complexd s);
    friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
    friend TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) { return a -= b; }
    friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator*(complexd s, TaylorSeries a) { return a *= s; }

    /// exp of the series (constant term allowed), by the standard recurrence.
    TaylorSeries exp() const;

  private:
    std::vector<complexd> c_;
};

/// Series of 1/sqrt(nu^2 - 4k^2) around k = 0.
TaylorSeries inv_sqrt_disc_series(double nu, int order);
/// Series of f1, f2 (slow coefficients of w_hat) and their v-side companions.
TaylorSeries f1_series(double nu, int order);
TaylorSeries f2_series(double nu, int order);
TaylorSeries f1v_series(double nu, int order);
TaylorSeries f2v_series(double nu, int order);
/// Series of Lambda(k) (starts at k^4).
TaylorSeries lambda_series(double nu, int order);
/// Series of a Gaussian transform amp * exp(-c k^2).
TaylorSeries gaussian_series(double amp, double c, int order);
/// Series of i k * gaussian (derivative-of-Gaussian data).
TaylorSeries ik_gaussian_series(double amp, double c, int order);

}  // namespace dlab
