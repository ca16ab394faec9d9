#pragma once

// Periodic spectral discretization of R^d on the box [-L, L)^d.
//
// Conventions: x_j = -L + j*h with h = 2L/N; frequencies xi_k = pi*k/L
// for k = -N/2 .. N/2-1, stored in FFT (wrap-around) order.  The forward
// transform approximates
//
//   fhat(xi) = int e^{-i x.xi} f(x) dx        (Riemann sum, weight h^d)
//
// and the inverse carries the (2pi)^{-d} weight, so ifft(fft(f)) = f up
// to round-off and Parseval reads ||fhat||_{L^2}^2 = (2pi)^d ||f||_{L^2}^2.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "dirach/clifford.hpp"

namespace dirach {

struct SpectralGrid {
    int d = 1;       // spatial dimension
    int N = 0;       // samples per axis, even, >= 4
    double L = 0;    // box half-width

    SpectralGrid() = default;
    SpectralGrid(int d_, int N_, double L_) : d(d_), N(N_), L(L_) {
        if (d < 1) throw std::invalid_argument("grid: d must be >= 1");
        if (N < 4 || N % 2 != 0) throw std::invalid_argument("grid: N must be even and >= 4");
        if (!(L > 0)) throw std::invalid_argument("grid: L must be positive");
    }

    double h() const { return 2.0 * L / N; }
    double dxi() const { return M_PI / L; }
    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(N);
        return s;
    }

    // axis index -> physical coordinate
    double x(int j) const { return -L + j * h(); }
    // axis index in FFT order -> signed mode number
    int mode(int j) const { return j < N / 2 ? j : j - N; }
    // axis index in FFT order -> frequency
    double xi(int j) const { return M_PI * mode(j) / L; }

    // decompose a flat row-major index into per-axis indices
    void unflatten(std::size_t idx, int* out) const {
        for (int ax = d - 1; ax >= 0; --ax) {
            out[ax] = static_cast<int>(idx % N);
            idx /= N;
        }
    }

    double xi_norm2(std::size_t idx) const {
        int j[8];
        unflatten(idx, j);
        double s = 0;
        for (int ax = 0; ax < d; ++ax) {
            const double v = xi(j[ax]);
            s += v * v;
        }
        return s;
    }

    bool operator==(const SpectralGrid& o) const {
        return d == o.d && N == o.N && L == o.L;
    }
};

enum class Space { physical, frequency };

// n-component complex field; component-major storage (component c occupies
// data[c*grid.size() .. (c+1)*grid.size())).
struct SpinorField {
    SpectralGrid grid;
    int n = 1;
    Space space = Space::physical;
    std::vector<cplx> data;

    SpinorField() = default;
    SpinorField(const SpectralGrid& g, int n_, Space sp = Space::physical)
        : grid(g), n(n_), space(sp), data(g.size() * n_, cplx(0, 0)) {}

    cplx* component(int c) { return data.data() + static_cast<std::size_t>(c) * grid.size(); }
    const cplx* component(int c) const {
        return data.data() + static_cast<std::size_t>(c) * grid.size();
    }
    cplx& at(int c, std::size_t idx) { return data[static_cast<std::size_t>(c) * grid.size() + idx]; }
    cplx at(int c, std::size_t idx) const {
        return data[static_cast<std::size_t>(c) * grid.size() + idx];
    }

    SpinorField& operator+=(const SpinorField& o) {
        for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
        return *this;
    }
    SpinorField& operator-=(const SpinorField& o) {
        for (std::size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
        return *this;
    }
    SpinorField& operator*=(cplx c) {
        for (auto& v : data) v *= c;
        return *this;
    }
    friend SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
    friend SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
    friend SpinorField operator*(cplx c, SpinorField f) { return f *= c; }
};

namespace detail {

// FFTW plans are cached per (d, N, sign); planning is not thread-safe.
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    // in-place transform of one component buffer, no scaling
    void execute(int d, int N, int sign, cplx* buf) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_tuple(d, N, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<int> dims(d, N);
                std::size_t total = 1;
                for (int i = 0; i < d; ++i) total *= N;
                scratch_.assign(total, cplx(0, 0));
                auto* p = reinterpret_cast<fftw_complex*>(scratch_.data());
                plan = fftw_plan_dft(d, dims.data(), p, p, sign,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_[key] = plan;
            } else {
                plan = it->second;
            }
        }
        auto* p = reinterpret_cast<fftw_complex*>(buf);
        fftw_execute_dft(plan, p, p);
    }

  private:
    FftEngine() = default;
    ~FftEngine() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
    std::vector<cplx> scratch_;
};

// (-1)^{sum of mode numbers}: converts between DFT indexing from x=0 and
// the box origin at x=-L (and likewise for the centered frequency set).
inline double checker_sign(const SpectralGrid& g, std::size_t idx) {
    int j[8];
    g.unflatten(idx, j);
    int s = 0;
    for (int ax = 0; ax < g.d; ++ax) s += j[ax];
    return (s % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

inline SpinorField fft(const SpinorField& f) {
    if (f.space != Space::physical)
        throw std::invalid_argument("fft: field must be in physical space");
    SpinorField out = f;
    out.space = Space::frequency;
    const std::size_t total = f.grid.size();
    const double hd = std::pow(f.grid.h(), f.grid.d);
    for (int c = 0; c < f.n; ++c) {
        cplx* buf = out.component(c);
        detail::FftEngine::instance().execute(f.grid.d, f.grid.N, FFTW_FORWARD, buf);
        for (std::size_t i = 0; i < total; ++i)
            buf[i] *= hd * detail::checker_sign(f.grid, i);
    }
    return out;
}

inline SpinorField ifft(const SpinorField& f) {
    if (f.space != Space::frequency)
        throw std::invalid_argument("ifft: field must be in frequency space");
    SpinorField out = f;
    out.space = Space::physical;
    const std::size_t total = f.grid.size();
    const double scale = std::pow(2.0 * f.grid.L, -f.grid.d);
    for (int c = 0; c < f.n; ++c) {
        cplx* buf = out.component(c);
        for (std::size_t i = 0; i < total; ++i)
            buf[i] *= detail::checker_sign(f.grid, i);
        detail::FftEngine::instance().execute(f.grid.d, f.grid.N, FFTW_BACKWARD, buf);
        for (std::size_t i = 0; i < total; ++i) buf[i] *= scale;
    }
    return out;
}

// pointwise modulus |f|(x) = sqrt(sum_c |f_c(x)|^2)
inline double pointwise_modulus2(const SpinorField& f, std::size_t idx) {
    double s = 0;
    for (int c = 0; c < f.n; ++c) s += std::norm(f.at(c, idx));
    return s;
}

// ||f||_{L^p} with the vector convention ||(sum_c |f_c|^2)^{1/2}||_{L^p};
// Riemann weight h^d in physical space, dxi^d in frequency space.
inline double lebesgue_norm(const SpinorField& f, double p) {
    if (p < 1) throw std::invalid_argument("lebesgue_norm: p must be >= 1");
    const std::size_t total = f.grid.size();
    if (std::isinf(p)) {
        double m = 0;
        for (std::size_t i = 0; i < total; ++i)
            m = std::max(m, pointwise_modulus2(f, i));
        return std::sqrt(m);
    }
    const double w = (f.space == Space::physical) ? std::pow(f.grid.h(), f.grid.d)
                                                  : std::pow(f.grid.dxi(), f.grid.d);
    double acc = 0;
    for (std::size_t i = 0; i < total; ++i)
        acc += std::pow(pointwise_modulus2(f, i), p / 2.0);
    return std::pow(w * acc, 1.0 / p);
}

inline cplx inner_product(const SpinorField& f, const SpinorField& g) {
    if (!(f.grid == g.grid) || f.n != g.n || f.space != g.space)
        throw std::invalid_argument("inner_product: field mismatch");
    const double w = (f.space == Space::physical) ? std::pow(f.grid.h(), f.grid.d)
                                                  : std::pow(f.grid.dxi(), f.grid.d);
    cplx acc(0, 0);
    for (std::size_t i = 0; i < f.data.size(); ++i) acc += f.data[i] * std::conj(g.data[i]);
    return w * acc;
}

inline double l2_norm(const SpinorField& f) { return lebesgue_norm(f, 2.0); }

// ---------------------------------------------------------------------------
// analytic field families

struct FieldDescriptor {
    enum class Kind { gaussian, gaussian_sum, plane_wave_packet, chirp };
    struct Term {
        double width = 1.0;                 // envelope exp(-|x-c|^2 / (2 width^2))
        std::vector<double> center;         // size d
        std::vector<double> modulation;     // size d, e^{i k.x}
        std::vector<cplx> weights;          // size n, component mixing
        double chirp_rate = 0.0;            // e^{i rate |x-c|^2}, chirp only
    };
    Kind kind = Kind::gaussian;
    std::vector<Term> terms;  // one term except for gaussian_sum
};

inline cplx eval_term_scalar(const FieldDescriptor::Term& t, const double* x, int d) {
    double r2 = 0, phase = 0;
    for (int ax = 0; ax < d; ++ax) {
        const double c = ax < static_cast<int>(t.center.size()) ? t.center[ax] : 0.0;
        const double k = ax < static_cast<int>(t.modulation.size()) ? t.modulation[ax] : 0.0;
        const double dx = x[ax] - c;
        r2 += dx * dx;
        phase += k * x[ax];
    }
    phase += t.chirp_rate * r2;
    return std::exp(-r2 / (2.0 * t.width * t.width)) * std::polar(1.0, phase);
}

// Deterministic sampling of an analytic family on the grid nodes.  Sets
// *truncated if the samples on the box boundary exceed 1e-8 of the peak.
inline SpinorField sample(const FieldDescriptor& desc, const SpectralGrid& grid, int n,
                          bool* truncated = nullptr) {
    SpinorField f(grid, n, Space::physical);
    const std::size_t total = grid.size();
    int j[8];
    double x[8];
    for (std::size_t i = 0; i < total; ++i) {
        grid.unflatten(i, j);
        for (int ax = 0; ax < grid.d; ++ax) x[ax] = grid.x(j[ax]);
        for (const auto& t : desc.terms) {
            const cplx v = eval_term_scalar(t, x, grid.d);
            for (int c = 0; c < n; ++c) {
                const cplx w = c < static_cast<int>(t.weights.size()) ? t.weights[c]
                               : (c == 0 ? cplx(1, 0) : cplx(0, 0));
                f.at(c, i) += w * v;
            }
        }
    }
    if (truncated) {
        double peak = 0, edge = 0;
        for (std::size_t i = 0; i < total; ++i) {
            grid.unflatten(i, j);
            bool boundary = false;
            for (int ax = 0; ax < grid.d; ++ax)
                if (j[ax] == 0) boundary = true;
            const double m = std::sqrt(pointwise_modulus2(f, i));
            peak = std::max(peak, m);
            if (boundary) edge = std::max(edge, m);
        }
        *truncated = peak > 0 && edge > 1e-8 * peak;
    }
    return f;
}

// sample an arbitrary scalar callable into component 0
inline SpinorField sample_scalar(const std::function<cplx(const double*)>& fn,
                                 const SpectralGrid& grid) {
    SpinorField f(grid, 1, Space::physical);
    int j[8];
    double x[8];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, j);
        for (int ax = 0; ax < grid.d; ++ax) x[ax] = grid.x(j[ax]);
        f.at(0, i) = fn(x);
    }
    return f;
}

}  // namespace dirach
