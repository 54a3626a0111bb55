#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dlab/rational.hpp"

namespace dlab {

enum class Parity { Even, Odd };

inline int parity_floor(Parity p) { return p == Parity::Even ? 0 : 1; }

/// Exact coefficients of the invariant-manifold graph functions
///   h_k(a, eta) = sum_{l>=1} Hhat(k, k-2l) eta^l a_{k-2l},
/// stored nu-free: Hhat(k,p) = c(k,p) nu^{-(k-p)-1} with c(k,p) rational.
/// Built by the triangular recursion
///   c(k, k-2)  = 1,
///   c(k, k-2p) = -2 c(k-2, k-2p)
///                + sum_{l=1}^{p-2} c(k, k-2l) c(k-2(l+1), k-2p),  p >= 2,
/// identical for both parities (seeded by h_0 = 0 resp. h_1 = 0).
class CMCoeffTable {
  public:
    static CMCoeffTable build(Parity parity, int max_index);

    Parity parity() const { return parity_; }
    int max_index() const { return N_; }

    bool has(int k, int p) const { return c_.count({k, p}) != 0; }
    const Rational& coeff(int k, int p) const;
    /// Hhat(k,p) = coeff * nu^{nu_exponent}; always -(k-p)-1.
    static int nu_exponent(int k, int p) { return -(k - p) - 1; }

    /// h_k evaluated at the caller's nu; `a` is indexed by mode number.
    double h_value(int k, std::span<const double> a, double eta, double nu) const;
    /// Single-term derivative d h_k / d a_l (zero when (k,l) is absent).
    double dh_da(int k, int l, double eta, double nu) const;

    const std::map<std::pair<int, int>, Rational>& entries() const { return c_; }

  private:
    Parity parity_ = Parity::Even;
    int N_ = 0;
    std::map<std::pair<int, int>, Rational> c_;
};

inline CMCoeffTable build_even_table(int N) { return CMCoeffTable::build(Parity::Even, N); }
inline CMCoeffTable build_odd_table(int N) { return CMCoeffTable::build(Parity::Odd, N); }

/// Right-hand side of the diagonalized system in the t clock, one parity:
///   a_k' = -eta (k/2 a_k + b_{k-2})
///   b_k' = -nu b_k - eta (k/2 b_k - a_{k-2}/nu^2 + 2 b_{k-2}/nu)
/// (terms with indices below the parity floor are absent). Vectors are
/// indexed by mode number; only entries of the given parity are touched.
void ab_rhs(Parity parity, double nu, double eta, std::span<const double> a,
            std::span<const double> b, std::span<double> da, std::span<double> db);

/// Off-manifold coordinates B_k = b_k - h_k: homogeneous, linear,
/// upper-triangular dynamics with the h-Jacobian entering through single terms.
void off_manifold_rhs(const CMCoeffTable& table, double nu, double eta,
                      std::span<const double> B, std::span<double> dB);

/// Full projected system for (alpha, beta) in the tau clock, both parities,
/// including the e^{tau}-stiff relaxation terms.
void alphabeta_rhs(double tau, std::span<const double> alpha, std::span<const double> beta,
                   double nu, int N, std::span<double> dalpha, std::span<double> dbeta);

/// Change of variables diagonalizing the linear part: a = alpha,
/// b = alpha/nu + beta  (and back).
void alphabeta_to_ab(std::span<const double> alpha, std::span<const double> beta, double nu,
                     std::span<double> a, std::span<double> b);
void ab_to_alphabeta(std::span<const double> a, std::span<const double> b, double nu,
                     std::span<double> alpha, std::span<double> beta);

enum class ReducedVar { Alpha, Beta, A, B };

/// Predicted long-time behavior |x_k(tau)| <= C e^{-r tau} / nu^q on the
/// manifold: r as an exact fraction, q the nu exponent.
struct RatePrediction {
    int k = 0;
    long rate_num = 0;   ///< r = rate_num / rate_den
    long rate_den = 1;
    int nu_power = 0;    ///< q
    bool identically_zero = false;  ///< b_0, b_1 vanish on the manifold
    double rate() const { return static_cast<double>(rate_num) / rate_den; }
};

RatePrediction predict_rate(int k, ReducedVar var);

/// Initial coefficients on the slow Duhamel orbit of the on-manifold
/// hierarchy: every probed mode k <= 8 (even) / 7 (odd) becomes a clean
/// single exponential, so rate fits over a fixed window measure the
/// asymptotic exponent rather than transients. Returned vector is indexed by
/// mode number, entries of the other parity zero.
std::vector<double> slow_orbit_initial_data(double nu, Parity parity, int max_index);

}  // namespace dlab
