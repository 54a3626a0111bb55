#include "dlab/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlab/threads.hpp"

namespace dlab {

UniformGrid default_kgrid(double halfwidth, int n) { return {-halfwidth, halfwidth, n}; }

double trapz(const std::vector<double>& f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

complexd trapz(const std::vector<complexd>& f, double h) {
    if (f.size() < 2) return 0.0;
    complexd s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

double l2_norm(const std::vector<complexd>& f, double h) {
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = std::norm(f[i]);
    return std::sqrt(std::max(0.0, trapz(sq, h)));
}

std::vector<complexd> deriv4(const std::vector<complexd>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<complexd> d(n);
    auto at = [&](int i) -> complexd { return (i < 0 || i >= n) ? complexd(0.0) : f[i]; };
    const double c1 = 8.0 / (12.0 * h), c2 = 1.0 / (12.0 * h);
    for (int i = 0; i < n; ++i)
        d[i] = c1 * (at(i + 1) - at(i - 1)) - c2 * (at(i + 2) - at(i - 2));
    return d;
}

std::vector<complexd> deriv4_n(const std::vector<complexd>& f, double h, int order) {
    std::vector<complexd> d = f;
    for (int j = 0; j < order; ++j) d = deriv4(d, h);
    return d;
}

namespace {

double triple_norm_from(const std::vector<complexd>& what, double h, double t, int m) {
    double acc = 0.0;
    std::vector<complexd> d = what;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) d = deriv4(d, h);
        const double nj = l2_norm(d, h);
        acc += std::pow(1.0 + t, -j) * nj * nj;
    }
    return std::pow(t + 1.0, 0.25) * std::sqrt(acc);
}

}  // namespace

double triple_norm(const std::vector<complexd>& what, double h, double t, int m,
                   double resolution_tol) {
    if (static_cast<int>(what.size()) < 4 * m + 9)
        throw std::invalid_argument("triple_norm: k-grid too small for requested order");
    const double full = triple_norm_from(what, h, t, m);
    // coarse comparison: every other point
    std::vector<complexd> half;
    half.reserve(what.size() / 2 + 1);
    for (std::size_t i = 0; i < what.size(); i += 2) half.push_back(what[i]);
    const double coarse = triple_norm_from(half, 2.0 * h, t, m);
    if (std::abs(full - coarse) > resolution_tol * std::max(full, 1e-300))
        throw std::runtime_error("triple_norm: k-grid resolution insufficient for derivatives");
    return full;
}

double triple_norm_analytic(const std::function<complexd(double, int)>& deriv,
                            const UniformGrid& kgrid, double t, int m) {
    double acc = 0.0;
    std::vector<complexd> vals(kgrid.n);
    for (int j = 0; j <= m; ++j) {
        for (int i = 0; i < kgrid.n; ++i) vals[i] = deriv(kgrid.node(i), j);
        const double nj = l2_norm(vals, kgrid.h());
        acc += std::pow(1.0 + t, -j) * nj * nj;
    }
    return std::pow(t + 1.0, 0.25) * std::sqrt(acc);
}

std::vector<complexd> inverse_transform(const UniformGrid& kgrid,
                                        const std::vector<complexd>& fhat,
                                        const std::vector<double>& xs) {
    if (static_cast<int>(fhat.size()) != kgrid.n)
        throw std::invalid_argument("inverse_transform: size mismatch");
    std::vector<complexd> out(xs.size());
    const double h = kgrid.h();
    const std::int64_t nx = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static) num_threads(dlab::threads::max_threads())
    for (std::int64_t ix = 0; ix < nx; ++ix) {
        const double x = xs[static_cast<std::size_t>(ix)];
        complexd s = 0.5 * (fhat.front() * std::polar(1.0, kgrid.a * x) +
                            fhat.back() * std::polar(1.0, kgrid.b * x));
        for (int i = 1; i + 1 < kgrid.n; ++i)
            s += fhat[i] * std::polar(1.0, kgrid.node(i) * x);
        out[static_cast<std::size_t>(ix)] = s * (h / (2.0 * std::numbers::pi));
    }
    return out;
}

std::vector<complexd> forward_transform(const std::vector<double>& xs,
                                        const std::vector<double>& weights,
                                        const std::vector<double>& f,
                                        const std::vector<double>& ks) {
    if (xs.size() != weights.size() || xs.size() != f.size())
        throw std::invalid_argument("forward_transform: size mismatch");
    std::vector<complexd> out(ks.size());
    const std::int64_t nk = static_cast<std::int64_t>(ks.size());
#pragma omp parallel for schedule(static) num_threads(dlab::threads::max_threads())
    for (std::int64_t j = 0; j < nk; ++j) {
        const double k = ks[static_cast<std::size_t>(j)];
        complexd s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += weights[i] * f[i] * std::polar(1.0, -k * xs[i]);
        out[static_cast<std::size_t>(j)] = s;
    }
    return out;
}

namespace {

// d^j/dk^j exp(-c k^2) = c^{j/2} (-1)^j Htilde_j(sqrt(c) k) exp(-c k^2)
// with the physicists' Hermite polynomials.
double hermite_phys(int n, double z) {
    double hm = 1.0, h = 2.0 * z;
    if (n == 0) return hm;
    for (int k = 1; k < n; ++k) {
        const double hp = 2.0 * z * h - 2.0 * k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

complexd gauss_deriv(double amp, double c, double k, int j) {
    const double sc = std::sqrt(c);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return amp * std::pow(sc, j) * sign * hermite_phys(j, sc * k) * std::exp(-c * k * k);
}

}  // namespace

complexd GaussianData::what0(double k) const {
    const double c = 0.5 * w_width * w_width;
    return w_amp * w_width * std::sqrt(2.0 * std::numbers::pi) * std::exp(-c * k * k);
}

complexd GaussianData::vhat0(double k) const {
    const double c = 0.5 * v_width * v_width;
    const double base = v_amp * v_width * std::sqrt(2.0 * std::numbers::pi) * std::exp(-c * k * k);
    if (!v_is_derivative) return base;
    return complexd(0.0, k) * base;  // FT of d/dx of the Gaussian
}

complexd GaussianData::what0_deriv(double k, int j) const {
    const double c = 0.5 * w_width * w_width;
    return gauss_deriv(w_amp * w_width * std::sqrt(2.0 * std::numbers::pi), c, k, j);
}

ModeState make_mode_state(const UniformGrid& kgrid, const GaussianData& data) {
    ModeState s;
    s.k = kgrid.nodes();
    s.what.resize(s.k.size());
    s.vhat.resize(s.k.size());
    for (std::size_t i = 0; i < s.k.size(); ++i) {
        s.what[i] = data.what0(s.k[i]);
        s.vhat[i] = data.vhat0(s.k[i]);
    }
    s.t = 0.0;
    return s;
}

}  // namespace dlab
