#include "dlab/decomposition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlab/fitting.hpp"
#include "dlab/propagator.hpp"

namespace dlab {

CutoffSpec CutoffSpec::standard(double nu) {
    CutoffSpec s;
    s.nu = nu;
    s.r1 = std::sqrt(15.0) * nu / 8.0;
    s.r2 = s.r1 + nu * nu;
    return s;
}

double cutoff(const CutoffSpec& spec, double k) {
    const double a = std::abs(k);
    if (a <= spec.r1) return 1.0;
    if (a >= spec.r2) return 0.0;
    const double u = (a - spec.r1) / (spec.r2 - spec.r1);
    // smooth bridge s(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)})
    const double eu = std::exp(-1.0 / u);
    const double ev = std::exp(-1.0 / (1.0 - u));
    return 1.0 - eu / (eu + ev);
}

SpectralData spectral_data(const GaussianData& g) {
    SpectralData d;
    d.what0 = [g](double k) { return g.what0(k); };
    d.vhat0 = [g](double k) { return g.vhat0(k); };
    const double wa = g.w_amp * g.w_width * std::sqrt(2.0 * std::numbers::pi);
    const double wc = 0.5 * g.w_width * g.w_width;
    const double va = g.v_amp * g.v_width * std::sqrt(2.0 * std::numbers::pi);
    const double vc = 0.5 * g.v_width * g.v_width;
    const bool vderiv = g.v_is_derivative;
    d.w_series = [wa, wc](int order) { return gaussian_series(wa, wc, order); };
    d.v_series = [va, vc, vderiv](int order) {
        return vderiv ? ik_gaussian_series(va, vc, order) : gaussian_series(va, vc, order);
    };
    return d;
}

complexd lambda_correction(double k, double nu) {
    return eigenvalues(k, nu).lambda_plus + (nu + 1.0 / nu) * k * k;
}

complexd wbar(const SpectralData& data, double k, double t, double nu) {
    const CutoffSpec spec = CutoffSpec::standard(nu);
    if (std::abs(k) >= spec.r2)
        throw std::domain_error("wbar: k outside the cutoff support");
    const SplitCoeffs c = w_split_coeffs(k, nu);
    return std::exp(lambda_correction(k, nu) * t) * (c.f1 * data.what0(k) + c.f2 * data.vhat0(k));
}

complexd vbar(const SpectralData& data, double k, double t, double nu) {
    const CutoffSpec spec = CutoffSpec::standard(nu);
    if (std::abs(k) >= spec.r2)
        throw std::domain_error("vbar: k outside the cutoff support");
    const SplitCoeffs c = v_split_coeffs(k, nu);
    return std::exp(lambda_correction(k, nu) * t) * (c.f1 * data.vhat0(k) + c.f2 * data.what0(k));
}

Decomposer::Decomposer(SpectralData data, double nu, int N)
    : data_(std::move(data)), nu_(nu), N_(N), spec_(CutoffSpec::standard(nu)) {
    if (N < 0) throw std::invalid_argument("Decomposer: negative truncation order");
}

namespace {

// derivatives f^{(j)}(0), j <= 2M, from samples on a symmetric stencil, by a
// scaled Vandermonde solve (least-squares-free: square system)
std::vector<complexd> stencil_derivatives(const std::function<complexd(double)>& f, double h,
                                          int max_order) {
    const int M = std::max(2, (max_order + 2) / 2 + 1);
    const int n = 2 * M + 1;
    std::vector<std::vector<complexd>> A(n, std::vector<complexd>(n));
    std::vector<complexd> rhs(n);
    for (int r = 0; r < n; ++r) {
        const double u = static_cast<double>(r - M);  // x / h
        double p = 1.0;
        for (int c = 0; c < n; ++c) {
            A[r][c] = p;
            p *= u;
        }
        rhs[r] = f(u * h);
    }
    // Gaussian elimination with partial pivoting
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (int r = c + 1; r < n; ++r) {
            const complexd m = A[r][c] / A[c][c];
            for (int cc = c; cc < n; ++cc) A[r][cc] -= m * A[c][cc];
            rhs[r] -= m * rhs[c];
        }
    }
    std::vector<complexd> coef(n);
    for (int r = n - 1; r >= 0; --r) {
        complexd s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * coef[c];
        coef[r] = s / A[r][r];
    }
    std::vector<complexd> derivs(max_order + 1);
    double fact = 1.0;
    for (int j = 0; j <= max_order; ++j) {
        if (j > 0) fact *= j;
        derivs[j] = coef[j] * fact / std::pow(h, j);
    }
    return derivs;
}

TaylorSeries data_series_or_fd(const std::function<TaylorSeries(int)>& builder,
                               const std::function<complexd(double)>& f, int order, double h) {
    if (builder) return builder(order);
    const auto d = stencil_derivatives(f, h, order);
    TaylorSeries s(order);
    double fact = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) fact *= j;
        s[j] = d[j] / fact;
    }
    return s;
}

}  // namespace

std::vector<complexd> Decomposer::taylor_at_zero(double t, bool cross_check) const {
    const int order = N_;
    const double h = nu_ / 100.0;
    const TaylorSeries w0 = data_series_or_fd(data_.w_series, data_.what0, order, h);
    const TaylorSeries v0 = data_series_or_fd(data_.v_series, data_.vhat0, order, h);
    TaylorSeries lam = lambda_series(nu_, order);
    lam *= t;
    const TaylorSeries expL = lam.exp();
    const TaylorSeries total =
        expL * (f1_series(nu_, order) * w0 + f2_series(nu_, order) * v0);
    std::vector<complexd> derivs(order + 1);
    for (int j = 0; j <= order; ++j) derivs[j] = total.derivative_at_zero(j);

    if (cross_check) {
        const auto fd = stencil_derivatives(
            [&](double k) { return wbar(data_, k, t, nu_); }, h, std::min(order, 3));
        for (int j = 0; j <= std::min(order, 3); ++j) {
            const double scale = std::max({std::abs(derivs[j]), std::abs(fd[j]), 1e-12});
            if (std::abs(derivs[j] - fd[j]) > 1e-4 * scale)
                throw std::runtime_error(
                    "taylor_at_zero: analytic and finite-difference derivatives disagree");
        }
    }
    return derivs;
}

std::vector<complexd> Decomposer::taylor_at_zero_v(double t) const {
    const int order = N_;
    const double h = nu_ / 100.0;
    const TaylorSeries w0 = data_series_or_fd(data_.w_series, data_.what0, order, h);
    const TaylorSeries v0 = data_series_or_fd(data_.v_series, data_.vhat0, order, h);
    TaylorSeries lam = lambda_series(nu_, order);
    lam *= t;
    const TaylorSeries total =
        lam.exp() * (f1v_series(nu_, order) * v0 + f2v_series(nu_, order) * w0);
    std::vector<complexd> derivs(order + 1);
    for (int j = 0; j <= order; ++j) derivs[j] = total.derivative_at_zero(j);
    return derivs;
}

complexd Decomposer::slow_w(double k, double t) const {
    const SplitCoeffs c = w_split_coeffs(k, nu_);
    const complexd lp = eigenvalues(k, nu_).lambda_plus;
    return std::exp(lp * t) * (c.f1 * data_.what0(k) + c.f2 * data_.vhat0(k));
}

complexd Decomposer::exact_what(double k, double t) const {
    const Mat2c M = propagator(k, t, nu_);
    return M.a11 * data_.what0(k) + M.a12 * data_.vhat0(k);
}

DecompositionParts Decomposer::parts(double k, double t) const {
    DecompositionParts p;
    const double psi = cutoff(spec_, k);
    const complexd wh = exact_what(k, t);
    p.high = (1.0 - psi) * wh;

    if (psi == 0.0) {
        p.low_poly = p.low_res = p.minus_part = 0.0;
        return p;
    }
    const EigenData e = eigenvalues(k, nu_);
    const SplitCoeffs c = w_split_coeffs(k, nu_);
    p.minus_part =
        psi * std::exp(e.lambda_minus * t) * (c.g1 * data_.what0(k) + c.g2 * data_.vhat0(k));

    // psi e^{-nu_T k^2 t} wbar = psi e^{lambda_+ t}(f1 w0 + f2 v0), overflow safe
    const complexd low_total = psi * slow_w(k, t);
    const auto derivs = taylor_at_zero(t, false);
    const double gauss = std::exp(-(nu_ + 1.0 / nu_) * k * k * t);
    complexd poly = 0.0;
    double fact = 1.0, kj = 1.0;
    for (int j = 0; j <= N_; ++j) {
        if (j > 0) {
            fact *= j;
            kj *= k;
        }
        poly += derivs[j] * kj / fact;
    }
    p.low_poly = psi * gauss * poly;
    p.low_res = low_total - p.low_poly;
    return p;
}

double c_coeff(int j, int l, double nu) {
    if (l < 0 || l > j) throw std::invalid_argument("c_coeff: need 0 <= l <= j");
    if ((j - l) % 2 != 0) return 0.0;
    const int q = (j - l) / 2;
    double bin = 1.0;
    const int s = std::min(l, j - l);
    for (int i = 0; i < s; ++i) bin = bin * (j - i) / (i + 1);
    double p = 1.0;  // (2q)!/q!
    for (int i = q + 1; i <= 2 * q; ++i) p *= i;
    return bin * std::pow(nu + 1.0 / nu, q) * p;
}

MomentIdentity moment_identity(int l, const WeightedFunction& w_scaling, double t,
                               const HermiteBasis& basis, int N) {
    if (l > N) throw std::invalid_argument("moment_identity: l must be <= N");
    MomentIdentity out;

    // Fourier route: what(kappa) = int e^{-i kappa sqrt(1+t) xi} w(xi) dxi,
    // differentiated at 0 from stencil samples.
    const auto& g = *w_scaling.grid;
    const double root = std::sqrt(1.0 + t);
    auto what = [&](double kappa) {
        complexd s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            s += g.weights()[i] * w_scaling.values[i] *
                 std::polar(1.0, -kappa * root * g.nodes()[i]);
        return s;
    };
    const double h = 0.1 / root;
    out.fourier_route = stencil_derivatives(what, h, l)[l];

    // moment route through the spectral projection
    const auto alpha = basis.project(w_scaling, N);
    double mom = 0.0;
    for (int r = 0; r <= N; ++r) mom += alpha[r] * basis.moment(l, r);
    out.moment_route = std::pow(complexd(0.0, -root), l) * mom;
    return out;
}

AppAssembler::AppAssembler(double nu, int N) : nu_(nu), N_(N), basis_(nu, N) {}

namespace {

std::vector<double> realify(const std::vector<complexd>& c, const char* what) {
    double scale = 0.0, imag = 0.0;
    for (const auto& v : c) {
        scale = std::max(scale, std::abs(v));
        imag = std::max(imag, std::abs(v.imag()));
    }
    if (scale > 0.0 && imag > 1e-9 * scale)
        throw std::runtime_error(std::string(what) + ": imaginary residue above tolerance");
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

}  // namespace

std::vector<double> AppAssembler::w_phi_coeffs(const std::vector<double>& alpha,
                                               double t) const {
    if (static_cast<int>(alpha.size()) < N_ + 1)
        throw std::invalid_argument("w_phi_coeffs: alpha too short");
    const double ratio = (1.0 + t) / t;
    std::vector<complexd> coeffs(N_ + 1, complexd(0.0));
    const complexd iunit(0.0, 1.0);
    double fact = 1.0;
    for (int j = 0; j <= N_; ++j) {
        if (j > 0) fact *= j;
        complexd acc = 0.0;
        for (int l = j % 2; l <= j; l += 2) {
            const double cjl = c_coeff(j, l, nu_);
            if (cjl == 0.0) continue;
            const complexd phase = std::pow(-iunit, l);
            double msum = 0.0;
            for (int r = 0; r <= N_; ++r) msum += alpha[r] * basis_.moment(l, r);
            acc += phase * cjl * std::pow(ratio, 0.5 * l) * msum;
        }
        coeffs[j] = acc / (fact * std::pow(iunit, j));
    }
    return realify(coeffs, "w_app assembly");
}

std::vector<double> AppAssembler::v_phi_coeffs(const std::vector<double>& beta,
                                               double t) const {
    if (static_cast<int>(beta.size()) < N_ + 1)
        throw std::invalid_argument("v_phi_coeffs: beta too short");
    const double ratio = (1.0 + t) / t;
    std::vector<complexd> coeffs(N_ + 1, complexd(0.0));
    const complexd iunit(0.0, 1.0);
    double fact = 1.0;
    for (int j = 0; j <= N_; ++j) {
        if (j > 0) fact *= j;
        complexd acc = 0.0;
        // d^l vhat(0,t) = (-i)^l (1+t)^{(l-1)/2} * (-l) sum_r beta_r M_{l-1,r}
        for (int l = (j % 2 == 0) ? 2 : 1; l <= j; l += 2) {
            const double cjl = c_coeff(j, l, nu_);
            if (cjl == 0.0) continue;
            const complexd phase = std::pow(-iunit, l);
            double msum = 0.0;
            for (int r = 0; r <= N_; ++r) msum += beta[r] * basis_.moment(l - 1, r);
            acc += phase * cjl * static_cast<double>(-l) * std::pow(ratio, 0.5 * (l - 1)) * msum;
        }
        coeffs[j] = acc / (fact * std::pow(iunit, j));
    }
    return realify(coeffs, "v_app assembly");
}

std::vector<double> AppAssembler::w_app_on_xi(const std::vector<double>& alpha, double t,
                                              const std::vector<double>& xis) const {
    const auto coeffs = w_phi_coeffs(alpha, t);
    const double s = std::sqrt((1.0 + t) / t);
    std::vector<double> out(xis.size(), 0.0);
    for (std::size_t i = 0; i < xis.size(); ++i) {
        const double xt = s * xis[i];
        double v = 0.0;
        for (int j = 0; j <= N_; ++j) v += coeffs[j] * basis_.phi(j, xt);
        out[i] = s * v;
    }
    return out;
}

std::vector<double> AppAssembler::v_app_on_xi(const std::vector<double>& beta, double t,
                                              const std::vector<double>& xis) const {
    const auto coeffs = v_phi_coeffs(beta, t);
    const double s = std::sqrt((1.0 + t) / t);
    std::vector<double> out(xis.size(), 0.0);
    for (std::size_t i = 0; i < xis.size(); ++i) {
        const double xt = s * xis[i];
        double v = 0.0;
        for (int j = 0; j <= N_; ++j) v += coeffs[j] * basis_.phi(j, xt);
        out[i] = s * s * v;
    }
    return out;
}

MomentNormCheck gaussian_moment_norm(int d, double nu_T, double t) {
    MomentNormCheck out;
    // quadrature on a grid wide enough for the Gaussian factor
    const double K = 12.0 / std::sqrt(std::max(1e-12, nu_T * t));
    const int n = 20001;
    const double h = 2.0 * K / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = -K + i * h;
        const double f = std::pow(std::abs(k), d) * std::exp(-nu_T * k * k * t);
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * f * f;
    }
    out.quadrature = std::sqrt(acc * h);
    // || k^d e^{-a k^2} ||^2 = Gamma(d + 1/2) / (2a)^{d+1/2},  a = nu_T t
    const double a = nu_T * t;
    out.closed_form = std::sqrt(std::tgamma(d + 0.5) / std::pow(2.0 * a, d + 0.5));
    return out;
}

namespace {

// uniform grid over the cutoff support that avoids the degenerate points
std::vector<double> bridge_grid(double nu, double halfwidth, int n) {
    std::vector<double> ks(n);
    const double h = 2.0 * halfwidth / (n - 1);
    for (int i = 0; i < n; ++i) {
        double k = -halfwidth + i * h;
        if (std::abs(std::abs(k) - 0.5 * nu) < 1e-7) k += 0.31 * h;
        ks[i] = k;
    }
    return ks;
}

double grid_l2(const std::vector<complexd>& f, double h) { return l2_norm(f, h); }

void fill_bound_report(BoundReport& rep, const std::vector<int>& orders,
                       const std::vector<double>& t_grid,
                       const std::vector<std::vector<double>>& norms,
                       const std::function<double(int, double)>& bound_rhs) {
    rep.t_grid = t_grid;
    rep.norms = norms;
    std::vector<double> logt(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) logt[i] = std::log(t_grid[i]);
    for (std::size_t io = 0; io < orders.size(); ++io) {
        const auto fit = fit_decay_exponent(logt, norms[io]);
        rep.slopes.push_back(fit.slope);
        double cmax = 0.0;
        std::vector<double> ratio(t_grid.size());
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            ratio[i] = norms[io][i] / bound_rhs(orders[io], t_grid[i]);
            cmax = std::max(cmax, ratio[i]);
        }
        rep.constants.push_back(cmax);
        const std::size_t tail = t_grid.size() / 2;
        const auto trend = fit_decay_exponent(
            std::span<const double>(logt).subspan(tail),
            std::span<const double>(ratio).subspan(tail));
        rep.constant_trend.push_back(trend.slope);
    }
}

}  // namespace

BoundReport residual_bound_check(const Decomposer& dec, double nu, int N,
                                 const std::vector<double>& t_grid,
                                 const std::vector<int>& orders) {
    for (double t : t_grid)
        if (!(t > 2.0 / nu))
            throw std::invalid_argument("residual_bound_check: needs t > 2/nu");
    const CutoffSpec spec = dec.spec();
    const auto ks = bridge_grid(nu, spec.r2 * 1.02, 3001);
    const double h = ks[1] - ks[0];

    std::vector<std::vector<double>> norms(orders.size(),
                                           std::vector<double>(t_grid.size(), 0.0));
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        std::vector<complexd> res(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) res[i] = dec.parts(ks[i], t).low_res;
        for (std::size_t io = 0; io < orders.size(); ++io) {
            const auto d = deriv4_n(res, h, orders[io]);
            norms[io][it] = std::pow(1.0 + t, -0.5 * orders[io]) * grid_l2(d, h);
        }
    }
    BoundReport rep;
    fill_bound_report(rep, orders, t_grid, norms, [&](int j, double t) {
        return std::pow(nu, -(N / 4.0 + j / 2.0)) * std::pow(t, -(N / 4.0 + 0.5));
    });
    return rep;
}

BoundReport high_mode_bound_check(const Decomposer& dec, double nu,
                                  const std::vector<double>& t_grid,
                                  const std::vector<int>& orders) {
    const auto ks = bridge_grid(nu, 9.0, 8001);
    const double h = ks[1] - ks[0];

    std::vector<std::vector<double>> norms(orders.size(),
                                           std::vector<double>(t_grid.size(), 0.0));
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        std::vector<complexd> high(ks.size()), minus(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const auto p = dec.parts(ks[i], t);
            high[i] = p.high;
            minus[i] = p.minus_part;
        }
        for (std::size_t io = 0; io < orders.size(); ++io) {
            const auto dh = deriv4_n(high, h, orders[io]);
            const auto dm = deriv4_n(minus, h, orders[io]);
            norms[io][it] = grid_l2(dh, h) + grid_l2(dm, h);
        }
    }
    BoundReport rep;
    rep.t_grid = t_grid;
    rep.norms = norms;
    for (std::size_t io = 0; io < orders.size(); ++io) {
        const auto fit = fit_decay_exponent(t_grid, norms[io]);  // exponential rate in t
        rep.slopes.push_back(fit.slope);
        double cmax = 0.0;
        std::vector<double> ratio(t_grid.size());
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            ratio[i] = norms[io][i] /
                       (std::pow(nu, -2.0 - orders[io]) * std::exp(-nu * t_grid[i] / 8.0));
            cmax = std::max(cmax, ratio[i]);
        }
        rep.constants.push_back(cmax);
        const std::size_t tail = t_grid.size() / 2;
        std::vector<double> logr(ratio.size());
        for (std::size_t i = 0; i < ratio.size(); ++i) logr[i] = ratio[i];
        const auto trend = fit_decay_exponent(
            std::span<const double>(t_grid).subspan(tail),
            std::span<const double>(logr).subspan(tail));
        rep.constant_trend.push_back(trend.slope);
    }
    return rep;
}

}  // namespace dlab
