#include "dlab/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace dlab {

CMCoeffTable CMCoeffTable::build(Parity parity, int max_index) {
    if (max_index < 0) throw std::invalid_argument("CMCoeffTable: negative index");
    CMCoeffTable t;
    t.parity_ = parity;
    t.N_ = max_index;
    const int lo = parity_floor(parity);
    for (int k = lo + 2; k <= max_index; k += 2) {
        const int pmax = (k - lo) / 2;
        for (int p = 1; p <= pmax; ++p) {
            const int target = k - 2 * p;
            if (p == 1) {
                t.c_[{k, target}] = 1;
                continue;
            }
            Rational val = 0;
            if (auto it = t.c_.find({k - 2, target}); it != t.c_.end())
                val -= 2 * it->second;
            for (int l = 1; l <= p - 2; ++l) {
                auto a = t.c_.find({k, k - 2 * l});
                auto b = t.c_.find({k - 2 * (l + 1), target});
                if (a != t.c_.end() && b != t.c_.end()) val += a->second * b->second;
            }
            t.c_[{k, target}] = val;
        }
    }
    return t;
}

const Rational& CMCoeffTable::coeff(int k, int p) const {
    auto it = c_.find({k, p});
    if (it == c_.end()) throw std::out_of_range("CMCoeffTable: no such coefficient");
    return it->second;
}

double CMCoeffTable::h_value(int k, std::span<const double> a, double eta, double nu) const {
    const int lo = parity_floor(parity_);
    if (k < lo || (k - lo) % 2 != 0) throw std::invalid_argument("h_value: parity mismatch");
    if (k > N_) throw std::out_of_range("h_value: index above table order");
    double s = 0.0;
    double etal = 1.0;
    for (int l = 1; 2 * l <= k - lo; ++l) {
        etal *= eta;
        const int p = k - 2 * l;
        if (static_cast<std::size_t>(p) >= a.size())
            throw std::invalid_argument("h_value: coefficient vector too short");
        auto it = c_.find({k, p});
        if (it == c_.end()) continue;
        s += to_double(it->second) * std::pow(nu, nu_exponent(k, p)) * etal * a[p];
    }
    return s;
}

double CMCoeffTable::dh_da(int k, int l, double eta, double nu) const {
    auto it = c_.find({k, l});
    if (it == c_.end()) return 0.0;
    const int power = (k - l) / 2;
    return to_double(it->second) * std::pow(nu, nu_exponent(k, l)) * std::pow(eta, power);
}

void ab_rhs(Parity parity, double nu, double eta, std::span<const double> a,
            std::span<const double> b, std::span<double> da, std::span<double> db) {
    const int lo = parity_floor(parity);
    const int n = static_cast<int>(a.size());
    for (int k = lo; k < n; k += 2) {
        const double lower_a = (k - 2 >= lo) ? a[k - 2] : 0.0;
        const double lower_b = (k - 2 >= lo) ? b[k - 2] : 0.0;
        da[k] = -eta * (0.5 * k * a[k] + lower_b);
        db[k] = -nu * b[k] - eta * (0.5 * k * b[k] - lower_a / (nu * nu) + 2.0 * lower_b / nu);
    }
}

void off_manifold_rhs(const CMCoeffTable& table, double nu, double eta,
                      std::span<const double> B, std::span<double> dB) {
    const int lo = parity_floor(table.parity());
    const int n = static_cast<int>(B.size());
    for (int k = lo; k < n; k += 2) {
        double v = -(nu + 0.5 * eta * k) * B[k];
        if (k - 2 >= lo) v -= (2.0 * eta / nu) * B[k - 2];
        for (int l = lo + 2; l <= k - 2; l += 2)
            v += eta * table.dh_da(k, l, eta, nu) * B[l - 2];
        dB[k] = v;
    }
}

void alphabeta_rhs(double tau, std::span<const double> alpha, std::span<const double> beta,
                   double nu, int N, std::span<double> dalpha, std::span<double> dbeta) {
    const double stiff = std::exp(tau);
    for (int k = 0; k <= N; ++k) {
        dalpha[k] = -0.5 * k * alpha[k];
        if (k - 2 >= 0) dalpha[k] -= alpha[k - 2] / nu + beta[k - 2];
        dbeta[k] = -0.5 * k * beta[k] - stiff * (nu * beta[k] + alpha[k]);
        if (k - 2 >= 0) dbeta[k] -= beta[k - 2] / nu;
    }
}

void alphabeta_to_ab(std::span<const double> alpha, std::span<const double> beta, double nu,
                     std::span<double> a, std::span<double> b) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        a[i] = alpha[i];
        b[i] = alpha[i] / nu + beta[i];
    }
}

void ab_to_alphabeta(std::span<const double> a, std::span<const double> b, double nu,
                     std::span<double> alpha, std::span<double> beta) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        alpha[i] = a[i];
        beta[i] = b[i] - a[i] / nu;
    }
}

RatePrediction predict_rate(int k, ReducedVar var) {
    if (k < 0) throw std::invalid_argument("predict_rate: negative index");
    RatePrediction r;
    r.k = k;
    r.rate_den = 4;
    const int mod = k % 4;
    switch (var) {
        case ReducedVar::Alpha:
        case ReducedVar::A:
            // k/4, (k+1)/4, (k+2)/4, (k+3)/4 for classes 0..3
            r.rate_num = k + ((4 - mod) % 4);
            r.nu_power = k - 1;
            break;
        case ReducedVar::Beta:
            r.rate_num = k + ((4 - mod) % 4);
            r.nu_power = k + 1;
            break;
        case ReducedVar::B:
            if (k <= 1) {
                r.identically_zero = true;  // h_0 = h_1 = 0
                r.rate_num = 0;
                r.nu_power = 0;
                return r;
            }
            if (mod == 0) r.rate_num = k + 4;
            else if (mod == 2) r.rate_num = k + 2;
            else if (mod == 1) r.rate_num = k + 5;
            else r.rate_num = k + 3;
            r.nu_power = k + 1;
            break;
    }
    // reduce the fraction
    while (r.rate_num % 2 == 0 && r.rate_den % 2 == 0 && r.rate_den > 1) {
        r.rate_num /= 2;
        r.rate_den /= 2;
    }
    return r;
}

std::vector<double> slow_orbit_initial_data(double nu, Parity parity, int max_index) {
    std::vector<double> a(max_index + 1, 0.0);
    const double n2 = nu * nu, n3 = n2 * nu, n5 = n3 * n2, n6 = n5 * nu;
    if (parity == Parity::Even) {
        // a0 free; a2 tuned so the rate-3 forcing of a8 cancels; a4..a8 start
        // on their Duhamel particular solutions (no homogeneous transient).
        if (max_index >= 0) a[0] = 1.0;
        if (max_index >= 2) a[2] = 2.5 / n2;
        if (max_index >= 4) a[4] = -1.0 / n3;
        if (max_index >= 6) a[6] = -0.5 / n5;
        if (max_index >= 8) a[8] = 0.5 / n6;
        if (max_index > 8)
            throw std::invalid_argument("slow_orbit_initial_data: even orbit known up to k = 8");
    } else {
        if (max_index >= 1) a[1] = 1.0;
        if (max_index >= 3) a[3] = 1.0;
        if (max_index >= 5) a[5] = -1.0 / n3;
        if (max_index >= 7) a[7] = 2.0 / n5 - 1.0 / n3;
        if (max_index > 7)
            throw std::invalid_argument("slow_orbit_initial_data: odd orbit known up to k = 7");
    }
    return a;
}

}  // namespace dlab
