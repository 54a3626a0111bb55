#include "dlab/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dlab {

HermiteBasis::HermiteBasis(double nu, int max_index)
    : HermiteBasis(DiffusivityTag{}, nu + 1.0 / nu, max_index) {
    if (!(nu > 0.0)) throw std::invalid_argument("HermiteBasis: nu must be positive");
}

HermiteBasis HermiteBasis::with_diffusivity(double nu_T, int max_index) {
    return HermiteBasis(DiffusivityTag{}, nu_T, max_index);
}

HermiteBasis::HermiteBasis(DiffusivityTag, double nu_T, int max_index)
    : nu_T_(nu_T), N_(max_index) {
    if (!(nu_T > 0.0) || max_index < 0)
        throw std::invalid_argument("HermiteBasis: bad parameters");
    build();
}

void HermiteBasis::build() {
    ht_.resize(N_ + 1);
    ht_[0] = {1.0};
    if (N_ >= 1) ht_[1] = {0.0, 2.0};
    for (int k = 2; k <= N_; ++k) {
        std::vector<double> c(k + 1, 0.0);
        for (int j = 0; j <= k - 1; ++j) c[j + 1] += 2.0 * ht_[k - 1][j];
        for (int j = 0; j <= k - 2; ++j) c[j] -= 2.0 * (k - 1) * ht_[k - 2][j];
        ht_[k] = std::move(c);
    }
    // the leading coefficient 2^k never vanishes, which is all the moment
    // lemma needs from the basis
    for (int k = 0; k <= N_; ++k)
        if (ht_[k][k] == 0.0) throw std::logic_error("HermiteBasis: degenerate recurrence");
}

double HermiteBasis::phys_hermite(int k, double z) const {
    const auto& c = ht_[k];
    double v = c[k];
    for (int j = k - 1; j >= 0; --j) v = v * z + c[j];
    return v;
}

double HermiteBasis::phi0(double xi) const {
    return std::exp(-xi * xi / (4.0 * nu_T_)) / std::sqrt(4.0 * std::numbers::pi * nu_T_);
}

double HermiteBasis::phi(int k, double xi) const {
    if (k < 0 || k > N_) throw std::out_of_range("HermiteBasis::phi index");
    const double s = 2.0 * std::sqrt(nu_T_);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(s, -k) * phys_hermite(k, xi / s) * phi0(xi);
}

double HermiteBasis::hermite_poly(int k, double xi) const {
    if (k < 0 || k > N_) throw std::out_of_range("HermiteBasis::hermite_poly index");
    const double s = 2.0 * std::sqrt(nu_T_);
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(nu_T_, 0.5 * k) / fact * phys_hermite(k, xi / s);
}

double HermiteBasis::moment(int l, int r) const {
    if (r > l || (l - r) % 2 != 0) return 0.0;
    // int xi^l d^r phi0 = (-1)^r l!/(l-r)! int xi^{l-r} phi0, phi0 ~ N(0, 2 nu_T)
    double fall = 1.0;
    for (int j = 0; j < r; ++j) fall *= (l - j);
    const int n = l - r;
    double mu = 1.0;
    for (int j = n - 1; j >= 1; j -= 2) mu *= j;          // (n-1)!!
    mu *= std::pow(2.0 * nu_T_, 0.5 * n);
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    return sign * fall * mu;
}

std::vector<double> HermiteBasis::project(const WeightedFunction& w, int N) const {
    if (N > N_) throw std::out_of_range("HermiteBasis::project: index above basis order");
    if (!(w.m > N + 0.5))
        throw std::invalid_argument("project: weight m must exceed N + 1/2");
    const auto& g = *w.grid;
    std::vector<double> alpha(N + 1);
    std::vector<double> integrand(g.size());
    for (int k = 0; k <= N; ++k) {
        for (std::size_t i = 0; i < g.size(); ++i)
            integrand[i] = hermite_poly(k, g.nodes()[i]) * w.values[i];
        alpha[k] = g.integrate_serial(integrand);
    }
    return alpha;
}

WeightedFunction HermiteBasis::reconstruct(const WeightedFunction& like,
                                           const std::vector<double>& alpha) const {
    WeightedFunction out;
    out.grid = like.grid;
    out.m = like.m;
    out.values.assign(like.values.size(), 0.0);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double xi = like.grid->nodes()[i];
        double s = 0.0;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            if (alpha[k] != 0.0) s += alpha[k] * phi(static_cast<int>(k), xi);
        out.values[i] = s;
    }
    return out;
}

UniformFieldR apply_scaling_operator(const UniformFieldR& f, double diffusivity) {
    const int n = static_cast<int>(f.values.size());
    if (n < 5) throw std::invalid_argument("apply_scaling_operator: grid too small");
    const double h = f.h;
    auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : f.values[i]; };
    UniformFieldR out = f;
    for (int i = 0; i < n; ++i) {
        const double d2 = (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) -
                           at(i + 2)) /
                          (12.0 * h * h);
        // (xi f)' with the same 4th-order first-derivative stencil
        auto xf = [&](int j) { return (f.a + j * h) * at(j); };
        const double d1 = (xf(i - 2) - 8.0 * xf(i - 1) + 8.0 * xf(i + 1) - xf(i + 2)) /
                          (12.0 * h);
        out.values[i] = diffusivity * d2 + 0.5 * d1;
    }
    return out;
}

}  // namespace dlab
