#include <doctest.h>

#include <random>

#include "dirach/timefreq.hpp"
#include "oracles.hpp"

using namespace dirach;

namespace {

std::vector<SpinorField> gaussian_ensemble(const SpectralGrid& g, int n, int count,
                                           unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uw(0.5, 2.5), uc(-2, 2), uk(-2, 2);
    std::normal_distribution<double> nd;
    std::vector<SpinorField> out;
    for (int i = 0; i < count; ++i) {
        FieldDescriptor desc;
        FieldDescriptor::Term t;
        t.width = uw(rng);
        t.center = {uc(rng)};
        t.modulation = {uk(rng)};
        for (int c = 0; c < n; ++c) t.weights.push_back(cplx(nd(rng), nd(rng)));
        desc.terms.push_back(t);
        out.push_back(sample(desc, g, n));
    }
    return out;
}

}  // namespace

TEST_CASE("Gaussian STFT matches the closed form and direct quadrature") {
    // f = g = e^{-y^2/2}: V_g f(x, xi) = sqrt(pi) e^{-x^2/4 - xi^2/4 - i x xi / 2}
    SpectralGrid grid(1, 512, 16.0);
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0] / 2); }, grid);
    Window w;
    w.samples = f;  // un-normalized copy of the same Gaussian

    ModulationParams params;  // dense lattice
    auto coeffs = stft(f, w, params);

    auto fn = [](double y) { return cplx(std::exp(-y * y / 2), 0); };
    double max_err = 0, max_oracle_err = 0;
    for (int jx : {128, 200, 256, 300, 380}) {
        for (int jk : {0, 3, 500, 20, 492}) {
            const double x = grid.x(jx), xi = grid.xi(jk);
            if (std::abs(x) > 6 || std::abs(xi) > 6) continue;
            const cplx closed = std::sqrt(M_PI) *
                                std::exp(-x * x / 4 - xi * xi / 4) *
                                std::polar(1.0, -x * xi / 2);
            max_err = std::max(max_err, std::abs(coeffs.at(jx, jk, 0) - closed));
            const cplx direct = oracles::stft_1d(fn, fn, x, xi, 12.0);
            max_oracle_err = std::max(max_oracle_err, std::abs(direct - closed));
        }
    }
    CHECK(max_err / std::sqrt(M_PI) < 1e-8);
    CHECK(max_oracle_err / std::sqrt(M_PI) < 1e-8);
}

TEST_CASE("STFT of zero is zero; translated input translates |V| in x") {
    SpectralGrid grid(1, 128, 12.0);
    Window w = Window::gaussian(grid);
    ModulationParams params;

    SpinorField zero(grid, 1, Space::physical);
    auto cz = stft(zero, w, params);
    for (auto v : cz.data) CHECK(std::abs(v) == 0.0);

    const int shift_pts = 16;  // a = shift_pts * h
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0]); }, grid);
    const double a = shift_pts * grid.h();
    auto fa = sample_scalar(
        [&](const double* x) { return std::exp(-(x[0] - a) * (x[0] - a)); }, grid);
    auto c0 = stft(f, w, params), c1 = stft(fa, w, params);
    double max_err = 0;
    for (int jx = 40; jx < 90; ++jx)
        for (int jk = 0; jk < grid.N; ++jk)
            max_err = std::max(max_err, std::abs(std::abs(c1.at(jx, jk, 0)) -
                                                 std::abs(c0.at(jx - shift_pts, jk, 0))));
    CHECK(max_err < 1e-10);
}

TEST_CASE("modulation norm at (2,2,0) with a normalized window is (2 pi)^{d/2} ||f||_2") {
    SpectralGrid grid(1, 256, 20.0);
    Window w = Window::gaussian(grid, 1.0, true);
    ModulationParams params;
    for (const auto& f : gaussian_ensemble(grid, 2, 8, 91)) {
        const double lhs = modulation_norm(f, w, params);
        const double rhs = std::sqrt(2 * M_PI) * l2_norm(f);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }
}

TEST_CASE("modulation norm basics: zero field, homogeneity") {
    SpectralGrid grid(1, 128, 12.0);
    Window w = Window::gaussian(grid);
    ModulationParams params{1.5, 3.0, 0.5, 2, 2};
    SpinorField zero(grid, 2, Space::physical);
    CHECK(modulation_norm(zero, w, params) == 0.0);

    auto f = gaussian_ensemble(grid, 2, 1, 7)[0];
    auto cf = f;
    cf *= cplx(0, -3.0);
    CHECK(modulation_norm(cf, w, params) ==
          doctest::Approx(3.0 * modulation_norm(f, w, params)).epsilon(1e-12));

    CHECK_THROWS_AS(modulation_norm(f, w, ModulationParams{0.5, 2, 0, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(modulation_norm(f, w, ModulationParams{2, 2, 0, 3, 1}),
                    std::invalid_argument);
}

TEST_CASE("Fourier-Lebesgue norm: Gaussian closed form and modulation invariance") {
    SpectralGrid grid(1, 512, 16 * M_PI);
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0] / 2); }, grid);
    // fhat = sqrt(2 pi) e^{-xi^2/2}; ||fhat||_{L^1} = 2 pi, ||fhat||_{L^2} = (2 pi)^{3/4} pi^{1/4} / ...
    CHECK(fourier_lebesgue_norm(f, 1) == doctest::Approx(2 * M_PI).epsilon(1e-10));
    const double l2 = std::sqrt(2 * M_PI) * std::pow(M_PI, 0.25);  // sqrt(2pi * sqrt(pi))
    CHECK(fourier_lebesgue_norm(f, 2) == doctest::Approx(l2).epsilon(1e-10));

    SpinorField zero(grid, 1, Space::physical);
    CHECK(fourier_lebesgue_norm(zero, 2) == 0.0);

    // modulation e^{i k x} shifts fhat, leaving the norm unchanged
    auto fm = sample_scalar(
        [&](const double* x) { return std::exp(-x[0] * x[0] / 2) * std::polar(1.0, 2.0 * x[0]); },
        grid);
    for (double p : {1.0, 2.0, 4.0})
        CHECK(fourier_lebesgue_norm(fm, p) ==
              doctest::Approx(fourier_lebesgue_norm(f, p)).epsilon(1e-8));
}

TEST_CASE("Sobolev norm: s=0 is L^p, H^1 Gaussian matches quadrature, s<0 smooths") {
    SpectralGrid grid(1, 512, 16.0);
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0]); }, grid);
    CHECK(sobolev_norm(f, 0, 2) == doctest::Approx(lebesgue_norm(f, 2)).epsilon(1e-12));

    // ||f||_{H^1}^2 = (2pi)^{-1} int (1+xi^2) |fhat|^2 dxi with fhat = sqrt(pi) e^{-xi^2/4}
    auto integrand = [](double xi) {
        return cplx((1 + xi * xi) * M_PI * std::exp(-xi * xi / 2), 0);
    };
    const double expected =
        std::sqrt(oracles::integrate(integrand, -40, 40, 200).real() / (2 * M_PI));
    CHECK(sobolev_norm(f, 1, 2) == doctest::Approx(expected).epsilon(1e-8));

    CHECK(sobolev_norm(f, -1, 2) <= lebesgue_norm(f, 2));
}

TEST_CASE("window equivalence: identical windows give ratio 1, widths stay bounded") {
    SpectralGrid grid(1, 256, 20.0);
    Window w1 = Window::gaussian(grid, 1.0), w2 = Window::gaussian(grid, 2.0);
    ModulationParams params{2, 4.0 / 3.0, 0, 1, 1};
    auto ensemble = gaussian_ensemble(grid, 2, 10, 55);

    auto same = window_equivalence_check(ensemble, w1, w1, params);
    CHECK(same.min == doctest::Approx(1.0));
    CHECK(same.max == doctest::Approx(1.0));

    auto stats = window_equivalence_check(ensemble, w1, w2, params);
    CHECK(stats.max / stats.min < 10.0);
    CHECK(stats.min > 0);
}

TEST_CASE("nesting: modulation norms obey the embedding ordering on an ensemble") {
    // p1 <= p2, q1 <= q2, s1 >= s2 => ||f||_{p2,q2,s2} <= C ||f||_{p1,q1,s1},
    // with C stable (within 2x) under grid refinement
    SpectralGrid coarse(1, 256, 20.0), fine(1, 512, 20.0);
    ModulationParams lo{1, 1, 1, 1, 1}, hi{2, 2, 0, 1, 1};
    auto ratio_max = [&](const SpectralGrid& g) {
        Window w = Window::gaussian(g);
        double worst = 0;
        for (const auto& f : gaussian_ensemble(g, 2, 8, 77))
            worst = std::max(worst, modulation_norm(f, w, hi) / modulation_norm(f, w, lo));
        return worst;
    };
    const double c_coarse = ratio_max(coarse), c_fine = ratio_max(fine);
    CHECK(c_coarse > 0);
    CHECK(std::isfinite(c_coarse));
    CHECK(c_fine / c_coarse < 2.0);
    CHECK(c_coarse / c_fine < 2.0);
}
