#pragma once

// Exact free Dirac evolution as the operator-valued Fourier multiplier
//
//   U(t, xi) = e^{-i t H(xi)},  H(xi) = m beta + sum_j alpha_j xi_j.
//
// Since H(xi)^2 = (m^2 + |xi|^2) I, the exponential closes as
//
//   e^{-i t H} = cos(t w) I - i t sinc(t w) H,  w = sqrt(m^2 + |xi|^2),
//
// which is exactly unitary up to round-off and O(n^2) per mode.

#include <cmath>
#include <vector>

#include "dirach/clifford.hpp"
#include "dirach/grid.hpp"

namespace dirach {

struct PropagatorParams {
    double m = 0;  // mass, >= 0
    CliffordRep rep;
};

namespace detail {

// sin(z)/z with a 4-term Taylor series below the cancellation threshold
inline double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
    }
    return std::sin(z) / z;
}

}  // namespace detail

// dense n x n matrix e^{-i t H(xi)} via the closed form
inline Matrix propagator_matrix(const CliffordRep& rep, const std::vector<double>& xi,
                                double t, double m) {
    double xi2 = 0;
    for (double v : xi) xi2 += v * v;
    const double w = std::sqrt(m * m + xi2);
    const Matrix h = dirac_symbol(rep, xi, m);
    return std::cos(t * w) * Matrix::Identity(rep.n, rep.n) -
           cplx(0, 1) * t * detail::sinc(t * w) * h;
}

// U(t) psi; accepts either space and returns in the input's space tag
inline SpinorField apply_propagator(const SpinorField& psi, double t,
                                    const PropagatorParams& params) {
    const bool was_physical = (psi.space == Space::physical);
    SpinorField fh = was_physical ? fft(psi) : psi;
    const SpectralGrid& g = fh.grid;
    const CliffordRep& rep = params.rep;

    Eigen::VectorXcd v(rep.n), hv(rep.n);
    int j[8];
    std::vector<double> xi(g.d);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, j);
        double xi2 = 0;
        for (int ax = 0; ax < g.d; ++ax) {
            xi[ax] = g.xi(j[ax]);
            xi2 += xi[ax] * xi[ax];
        }
        const double w = std::sqrt(params.m * params.m + xi2);
        const double cs = std::cos(t * w);
        const cplx sn = cplx(0, -1) * t * detail::sinc(t * w);

        for (int c = 0; c < rep.n; ++c) v(c) = fh.at(c, i);
        hv = params.m * (rep.beta * v);
        for (int ax = 0; ax < g.d; ++ax) hv += xi[ax] * (rep.alphas[ax] * v);
        for (int c = 0; c < rep.n; ++c) fh.at(c, i) = cs * v(c) + sn * hv(c);
    }
    return was_physical ? ifft(fh) : fh;
}

}  // namespace dirach
