#pragma once

// Discrete short-time Fourier transform and the norms built on it:
// modulation, Fourier-Lebesgue and Sobolev.
//
//   V_g f(x, xi) = int e^{-i y.xi} f(y) conj(g(y - x)) dy
//
//   ||f||_{M_s^{p,q}} = ( int ( int |V_g f(x,xi)|^p dx )^{q/p}
//                         (1+|xi|^2)^{s q/2} dxi )^{1/q}
//
// evaluated on a Gabor lattice: x over every x_stride-th grid point, xi over
// every xi_stride-th discrete frequency.  Vector components are combined as
// |V_g f| = (sum_k |V_g f_k|^2)^{1/2} before the mixed norm is taken.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dirach/grid.hpp"

namespace dirach {

struct Window {
    SpinorField samples;  // scalar (n = 1), physical space
    bool normalized = false;

    static Window gaussian(const SpectralGrid& grid, double width = 1.0,
                           bool l2_normalize = true) {
        FieldDescriptor desc;
        desc.terms.push_back({width, {}, {}, {cplx(1, 0)}, 0.0});
        Window w;
        w.samples = sample(desc, grid, 1);
        if (l2_normalize) {
            const double nrm = l2_norm(w.samples);
            w.samples *= cplx(1.0 / nrm, 0);
            w.normalized = true;
        }
        return w;
    }
};

struct ModulationParams {
    double p = 2, q = 2, s = 0;
    int x_stride = 1;   // lattice step in grid points
    int xi_stride = 1;  // lattice step in frequency bins

    void validate(const SpectralGrid& grid) const {
        if (p < 1 || q < 1) throw std::invalid_argument("modulation: p, q must be >= 1");
        if (x_stride < 1 || grid.N % x_stride != 0 || xi_stride < 1 || grid.N % xi_stride != 0)
            throw std::invalid_argument("modulation: strides must divide N");
    }
};

// Dense table of V_g f over the lattice; used by tests and the stft path.
struct GaborCoefficients {
    SpectralGrid grid;
    int n = 1;
    int x_stride = 1, xi_stride = 1;
    int nx = 0, nxi = 0;  // lattice points per axis
    // layout: [x-lattice][xi-lattice][component], row-major per axis
    std::vector<cplx> data;

    std::size_t lattice_size(int per_axis) const {
        std::size_t s = 1;
        for (int i = 0; i < grid.d; ++i) s *= static_cast<std::size_t>(per_axis);
        return s;
    }
    cplx& at(std::size_t xl, std::size_t kl, int c) {
        return data[(xl * lattice_size(nxi) + kl) * n + c];
    }
    cplx at(std::size_t xl, std::size_t kl, int c) const {
        return data[(xl * lattice_size(nxi) + kl) * n + c];
    }
};

namespace detail {

// windowed copy f(y) conj(g(y - x_m)), x_m indexed by per-axis offsets m*stride;
// the window shift is periodic (g decays below 1e-12 at the box edge).
inline void windowed_component(const SpinorField& f, int c, const Window& w,
                               const int* shift, std::vector<cplx>& out) {
    const SpectralGrid& g = f.grid;
    const std::size_t total = g.size();
    out.resize(total);
    int j[8], js[8];
    for (std::size_t i = 0; i < total; ++i) {
        g.unflatten(i, j);
        std::size_t wi = 0;
        for (int ax = 0; ax < g.d; ++ax) {
            // y - x_m in index space; grid index N/2 sits at the origin
            js[ax] = j[ax] - shift[ax] + g.N / 2;
            js[ax] %= g.N;
            if (js[ax] < 0) js[ax] += g.N;
            wi = wi * g.N + js[ax];
        }
        out[i] = f.at(c, i) * std::conj(w.samples.at(0, wi));
    }
}

inline void advance_lattice(int* m, int d, int count) {
    for (int ax = d - 1; ax >= 0; --ax) {
        if (++m[ax] < count) return;
        m[ax] = 0;
    }
}

}  // namespace detail

inline GaborCoefficients stft(const SpinorField& f, const Window& w,
                              const ModulationParams& params) {
    if (f.space != Space::physical) throw std::invalid_argument("stft: physical space required");
    if (!(f.grid == w.samples.grid)) throw std::invalid_argument("stft: window grid mismatch");
    params.validate(f.grid);

    const SpectralGrid& g = f.grid;
    GaborCoefficients out;
    out.grid = g;
    out.n = f.n;
    out.x_stride = params.x_stride;
    out.xi_stride = params.xi_stride;
    out.nx = g.N / params.x_stride;
    out.nxi = g.N / params.xi_stride;
    const std::size_t nxl = out.lattice_size(out.nx);
    const std::size_t nkl = out.lattice_size(out.nxi);
    out.data.assign(nxl * nkl * f.n, cplx(0, 0));

    const double hd = std::pow(g.h(), g.d);
    std::vector<cplx> buf;
    std::vector<int> m(g.d, 0), shift(g.d), jk(g.d);
    for (std::size_t xl = 0; xl < nxl; ++xl) {
        for (int ax = 0; ax < g.d; ++ax) shift[ax] = m[ax] * params.x_stride;
        for (int c = 0; c < f.n; ++c) {
            detail::windowed_component(f, c, w, shift.data(), buf);
            detail::FftEngine::instance().execute(g.d, g.N, FFTW_FORWARD, buf.data());
            // subsample frequencies and fix up scaling/phase as in fft()
            std::vector<int> mk(g.d, 0);
            for (std::size_t kl = 0; kl < nkl; ++kl) {
                std::size_t fi = 0;
                for (int ax = 0; ax < g.d; ++ax) fi = fi * g.N + mk[ax] * params.xi_stride;
                out.at(xl, kl, c) = hd * detail::checker_sign(g, fi) * buf[fi];
                detail::advance_lattice(mk.data(), g.d, out.nxi);
            }
        }
        detail::advance_lattice(m.data(), g.d, out.nx);
    }
    return out;
}

// Streaming mixed-norm evaluation: inner L^p over the x-lattice is
// accumulated per frequency while sweeping lattice translates, so the full
// (x, xi) table is never materialized.
inline double modulation_norm(const SpinorField& f, const Window& w,
                              const ModulationParams& params) {
    if (f.space != Space::physical)
        throw std::invalid_argument("modulation_norm: physical space required");
    if (!(f.grid == w.samples.grid))
        throw std::invalid_argument("modulation_norm: window grid mismatch");
    params.validate(f.grid);

    const SpectralGrid& g = f.grid;
    const int nx = g.N / params.x_stride;
    const std::size_t total = g.size();
    std::size_t nxl = 1;
    for (int i = 0; i < g.d; ++i) nxl *= static_cast<std::size_t>(nx);

    const bool p_inf = std::isinf(params.p);
    const bool q_inf = std::isinf(params.q);
    const double hd = std::pow(g.h(), g.d);

    std::vector<double> acc(total, 0.0);   // sum_x |V|^p (or max) per frequency
    std::vector<double> mod2(total);       // |V(x_m, .)|^2 over components
    std::vector<cplx> buf;
    std::vector<int> m(g.d, 0), shift(g.d);

    for (std::size_t xl = 0; xl < nxl; ++xl) {
        for (int ax = 0; ax < g.d; ++ax) shift[ax] = m[ax] * params.x_stride;
        std::fill(mod2.begin(), mod2.end(), 0.0);
        for (int c = 0; c < f.n; ++c) {
            detail::windowed_component(f, c, w, shift.data(), buf);
            detail::FftEngine::instance().execute(g.d, g.N, FFTW_FORWARD, buf.data());
            for (std::size_t i = 0; i < total; ++i) mod2[i] += std::norm(buf[i]);
        }
        if (p_inf)
            for (std::size_t i = 0; i < total; ++i) acc[i] = std::max(acc[i], mod2[i]);
        else
            for (std::size_t i = 0; i < total; ++i)
                acc[i] += std::pow(mod2[i], params.p / 2.0);
        detail::advance_lattice(m.data(), g.d, nx);
    }

    // |V| carries the h^d forward-transform weight; the checkerboard phase
    // drops under the modulus
    const double xw = std::pow(params.x_stride * g.h(), g.d);
    const double kw = std::pow(params.xi_stride * g.dxi(), g.d);
    double result = 0;
    int j[8];
    for (std::size_t i = 0; i < total; ++i) {
        g.unflatten(i, j);
        bool on_lattice = true;
        for (int ax = 0; ax < g.d; ++ax)
            if (j[ax] % params.xi_stride != 0) on_lattice = false;
        if (!on_lattice) continue;
        // inner norm over x: (sum_x |V|^p * xw)^{1/p} with |V| = hd*sqrt(mod2)
        const double inner = p_inf
            ? hd * std::sqrt(acc[i])
            : std::pow(xw * std::pow(hd, params.p) * acc[i], 1.0 / params.p);
        const double term = std::pow(1.0 + g.xi_norm2(i), params.s / 2.0) * inner;
        if (q_inf)
            result = std::max(result, term);
        else
            result += kw * std::pow(term, params.q);
    }
    return q_inf ? result : std::pow(result, 1.0 / params.q);
}

inline double fourier_lebesgue_norm(const SpinorField& f, double p) {
    const SpinorField fh = (f.space == Space::frequency) ? f : fft(f);
    return lebesgue_norm(fh, p);
}

// ||f||_{W^{s,p}}: weight (1+|xi|^2)^{s/2} in frequency, back to x, then L^p.
inline double sobolev_norm(const SpinorField& f, double s, double p) {
    SpinorField fh = (f.space == Space::frequency) ? f : fft(f);
    const std::size_t total = fh.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        const double w = std::pow(1.0 + fh.grid.xi_norm2(i), s / 2.0);
        for (int c = 0; c < fh.n; ++c) fh.at(c, i) *= w;
    }
    return lebesgue_norm(ifft(fh), p);
}

struct RatioStats {
    double min = 0, max = 0, median = 0;
    std::vector<double> ratios;
};

inline RatioStats ratio_stats(std::vector<double> ratios) {
    RatioStats r;
    r.ratios = ratios;
    std::sort(ratios.begin(), ratios.end());
    r.min = ratios.front();
    r.max = ratios.back();
    r.median = ratios[ratios.size() / 2];
    return r;
}

// Empirical check that two windows give equivalent modulation norms.
inline RatioStats window_equivalence_check(const std::vector<SpinorField>& ensemble,
                                           const Window& w1, const Window& w2,
                                           const ModulationParams& params) {
    std::vector<double> ratios;
    ratios.reserve(ensemble.size());
    for (const auto& f : ensemble)
        ratios.push_back(modulation_norm(f, w1, params) / modulation_norm(f, w2, params));
    return ratio_stats(std::move(ratios));
}

}  // namespace dirach
