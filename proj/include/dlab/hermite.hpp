#pragma once

#include <vector>

#include "dlab/quadrature.hpp"

namespace dlab {

/// Eigenbasis of L_T = nu_T d^2 + (1/2) d(xi .) in L^2(m): eigenfunctions
/// phi_k = d^k phi_0 (Gaussian derivatives, eigenvalue -k/2) and adjoint
/// polynomials H_k with the biorthogonality <H_k, phi_l> = delta_{kl}.
///
/// H_k is stored as exact polynomial coefficients generated by the Hermite
/// recurrence and evaluated by Horner; the e^{+xi^2/4nu_T} e^{-xi^2/4nu_T}
/// product in the Rodrigues formula is never formed.
class HermiteBasis {
  public:
    HermiteBasis(double nu, int max_index);
    static HermiteBasis with_diffusivity(double nu_T, int max_index);

    double nu_T() const { return nu_T_; }
    int max_index() const { return N_; }

    double phi0(double xi) const;
    double phi(int k, double xi) const;
    double hermite_poly(int k, double xi) const;

    /// int xi^l phi_r dxi in closed form (Gaussian moments).
    double moment(int l, int r) const;

    /// alpha_k = <H_k, w>, k = 0..N, by quadrature. Requires w.m > N + 1/2.
    std::vector<double> project(const WeightedFunction& w, int N) const;
    /// Projection P_N w evaluated back on the grid of w.
    WeightedFunction reconstruct(const WeightedFunction& like,
                                 const std::vector<double>& alpha) const;

  private:
    struct DiffusivityTag {};
    HermiteBasis(DiffusivityTag, double nu_T, int max_index);
    void build();
    double phys_hermite(int k, double z) const;

    double nu_T_;
    int N_;
    std::vector<std::vector<double>> ht_;  // physicists' Hermite coefficients
};

/// Function sampled on a uniform grid, for finite-difference operator work.
struct UniformFieldR {
    double a = 0.0;
    double h = 1.0;
    std::vector<double> values;
};

/// (diffusivity) f'' + (1/2)(xi f)', 4th-order stencils, zero beyond the ends.
UniformFieldR apply_scaling_operator(const UniformFieldR& f, double diffusivity);
/// L with the bare viscosity.
inline UniformFieldR apply_L(const UniformFieldR& f, double nu) {
    return apply_scaling_operator(f, nu);
}
/// L_T with the enhanced diffusivity nu + 1/nu.
inline UniformFieldR apply_LT(const UniformFieldR& f, double nu) {
    return apply_scaling_operator(f, nu + 1.0 / nu);
}

}  // namespace dlab
