#pragma once

// Norm selector shared by the solver and the CLI: modulation M_s^{p,q},
// Fourier-Lebesgue FL^p, Sobolev W^{s,p}, or plain L^p.

#include <stdexcept>
#include <string>

#include "dirach/timefreq.hpp"

namespace dirach {

struct NormSpec {
    enum class Kind { modulation, fourier_lebesgue, sobolev, lebesgue };
    Kind kind = Kind::modulation;
    double p = 2, q = 2, s = 0;
    double window_width = 1.0;
    int x_stride = 1, xi_stride = 1;

    static NormSpec modulation(double p, double q, double s = 0) {
        return {Kind::modulation, p, q, s, 1.0, 1, 1};
    }
    static NormSpec lebesgue(double p) { return {Kind::lebesgue, p, 0, 0, 1.0, 1, 1}; }
    static NormSpec fourier_lebesgue(double p) {
        return {Kind::fourier_lebesgue, p, 0, 0, 1.0, 1, 1};
    }
    static NormSpec sobolev(double s, double p) {
        return {Kind::sobolev, p, 0, s, 1.0, 1, 1};
    }
};

// caches the window per grid to avoid resampling on every evaluation
class NormEvaluator {
  public:
    explicit NormEvaluator(const NormSpec& spec) : spec_(spec) {}

    double operator()(const SpinorField& f) const {
        switch (spec_.kind) {
            case NormSpec::Kind::lebesgue:
                return lebesgue_norm(f, spec_.p);
            case NormSpec::Kind::fourier_lebesgue:
                return fourier_lebesgue_norm(f, spec_.p);
            case NormSpec::Kind::sobolev:
                return sobolev_norm(f, spec_.s, spec_.p);
            case NormSpec::Kind::modulation: {
                ensure_window(f.grid);
                ModulationParams mp{spec_.p, spec_.q, spec_.s, spec_.x_stride, spec_.xi_stride};
                return modulation_norm(f, window_, mp);
            }
        }
        throw std::logic_error("NormEvaluator: unknown kind");
    }

    const NormSpec& spec() const { return spec_; }

  private:
    void ensure_window(const SpectralGrid& g) const {
        if (!have_window_ || !(window_grid_ == g)) {
            window_ = Window::gaussian(g, spec_.window_width, true);
            window_grid_ = g;
            have_window_ = true;
        }
    }

    NormSpec spec_;
    mutable bool have_window_ = false;
    mutable SpectralGrid window_grid_;
    mutable Window window_;
};

inline std::string to_string(NormSpec::Kind k) {
    switch (k) {
        case NormSpec::Kind::modulation: return "mod";
        case NormSpec::Kind::fourier_lebesgue: return "fl";
        case NormSpec::Kind::sobolev: return "sobolev";
        case NormSpec::Kind::lebesgue: return "lp";
    }
    return "?";
}

}  // namespace dirach
