#include "dlab/series.hpp"

#include <cmath>

namespace dlab {

complexd TaylorSeries::derivative_at_zero(int j) const {
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    return fact * c_[j];
}

TaylorSeries& TaylorSeries::operator+=(const TaylorSeries& o) {
    for (int n = 0; n <= std::min(order(), o.order()); ++n) c_[n] += o.c_[n];
    return *this;
}

TaylorSeries& TaylorSeries::operator-=(const TaylorSeries& o) {
    for (int n = 0; n <= std::min(order(), o.order()); ++n) c_[n] -= o.c_[n];
    return *this;
}

TaylorSeries& TaylorSeries::operator*=(complexd s) {
    for (auto& v : c_) v *= s;
    return *this;
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    TaylorSeries out(std::min(a.order(), b.order()));
    for (int n = 0; n <= out.order(); ++n)
        for (int j = 0; j <= n; ++j) out.c_[n] += a.c_[j] * b.c_[n - j];
    return out;
}

TaylorSeries TaylorSeries::exp() const {
    TaylorSeries g(order());
    g.c_[0] = std::exp(c_[0]);
    for (int n = 1; n <= order(); ++n) {
        complexd s = 0.0;
        for (int j = 1; j <= n; ++j) s += static_cast<double>(j) * c_[j] * g.c_[n - j];
        g.c_[n] = s / static_cast<double>(n);
    }
    return g;
}

namespace {

// binom(alpha, n) by the falling-product recurrence
double binom_real(double alpha, int n) {
    double b = 1.0;
    for (int j = 0; j < n; ++j) b *= (alpha - j) / (j + 1);
    return b;
}

}  // namespace

TaylorSeries inv_sqrt_disc_series(double nu, int order) {
    // 1/sqrt(nu^2-4k^2) = (1/nu) sum binom(-1/2,n) (-x)^n, x = 4k^2/nu^2
    TaylorSeries s(order);
    for (int n = 0; 2 * n <= order; ++n) {
        const double coef = binom_real(-0.5, n) * std::pow(-4.0 / (nu * nu), n) / nu;
        s[2 * n] = coef;
    }
    return s;
}

TaylorSeries f1_series(double nu, int order) {
    TaylorSeries s = inv_sqrt_disc_series(nu, order);
    s *= 0.5 * nu;
    s[0] += 0.5;
    return s;
}

TaylorSeries f2_series(double nu, int order) {
    const TaylorSeries inv = inv_sqrt_disc_series(nu, order);
    TaylorSeries s(order);
    for (int n = 1; n <= order; ++n) s[n] = complexd(0.0, -1.0) * inv[n - 1];
    return s;
}

TaylorSeries f1v_series(double nu, int order) {
    TaylorSeries s = inv_sqrt_disc_series(nu, order);
    s *= -0.5 * nu;
    s[0] += 0.5;
    return s;
}

TaylorSeries f2v_series(double nu, int order) { return f2_series(nu, order); }

TaylorSeries lambda_series(double nu, int order) {
    TaylorSeries s(order);
    for (int n = 2; 2 * n <= order; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        s[2 * n] = 0.5 * nu * binom_real(0.5, n) * sign * std::pow(4.0 / (nu * nu), n);
    }
    return s;
}

TaylorSeries gaussian_series(double amp, double c, int order) {
    TaylorSeries s(order);
    double term = amp;
    for (int n = 0; 2 * n <= order; ++n) {
        s[2 * n] = term;
        term *= -c / (n + 1.0);
    }
    return s;
}

TaylorSeries ik_gaussian_series(double amp, double c, int order) {
    const TaylorSeries g = gaussian_series(amp, c, order);
    TaylorSeries s(order);
    for (int n = 1; n <= order; ++n) s[n] = complexd(0.0, 1.0) * g[n - 1];
    return s;
}

}  // namespace dlab
