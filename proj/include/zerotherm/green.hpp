#pragma once

namespace zerotherm {

// Kernel data of -d^2/dtau^2 + omega_bar^2 on [0, L] with Dirichlet ends.
// Hyperbolics are evaluated through exponential-difference and log forms, so any
// omega_bar * L up to the exp() underflow floor (~710) is representable; the
// small-argument branches keep the massless limit smooth.
struct DirichletKernel {
    double omega_bar = 1.0;
    double length = 1.0;

    DirichletKernel(double omega_bar_, double length_);
    double z() const { return omega_bar * length; }
};

// ln sinh z for z > 0 without overflow.
double log_sinh(double z);

// G(tau, tau') = sinh(w tau_<) sinh(w (L - tau_>)) / (w sinh(w L)); the positive
// symmetric Green function vanishing at both ends. Limit tau_<(L - tau_>)/L as w -> 0.
double green_value(const DirichletKernel& k, double tau, double tau_p);

// w / (2 pi sinh(w L)); square root of this is the Gaussian fluctuation integral.
double det_prefactor(const DirichletKernel& k);
double log_det_prefactor(const DirichletKernel& k);

// Same prefactor from the initial value problem u'' = w^2 u, u(0) = 0, u'(0) = 1,
// prefactor = 1 / (2 pi u(L)); independent cross-check of the closed form.
double det_prefactor_gelfand_yaglom(const DirichletKernel& k);

// integral over [0,L]^2 of G = L/w^2 - 2 tanh(w L / 2)/w^3; L^3/12 limit at w -> 0.
double kernel_total_integral(const DirichletKernel& k);

// integral over tau' of G(tau, tau') = [1 - cosh(w(tau - L/2))/cosh(w L/2)] / w^2.
double kernel_row_integral(const DirichletKernel& k, double tau);

// integral over [0,L] of G(theta, theta)^2 by adaptive quadrature (tol 1e-10).
double diag_square_integral(const DirichletKernel& k);

// Thermal propagator (1/2w)[(1+n) e^{-w tau} + n e^{w tau}], n = 1/(e^{beta w} - 1),
// in the stable exponential form; periodic at the endpoints. Requires w > 0.
double free_propagator(double omega, double beta, double tau);

}  // namespace zerotherm
