#include <doctest.h>

#include <random>

#include "dirach/grid.hpp"
#include "dirach/clifford.hpp"

using namespace dirach;

namespace {

SpinorField gaussian_1d(const SpectralGrid& g, double width = 1.0) {
    FieldDescriptor desc;
    desc.terms.push_back({width, {}, {}, {cplx(1, 0)}, 0.0});
    return sample(desc, g, 1);
}

SpinorField random_field(const SpectralGrid& g, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    SpinorField f(g, n, Space::physical);
    for (auto& v : f.data) v = cplx(nd(rng), nd(rng));
    return f;
}

}  // namespace

TEST_CASE("fft of a unit Gaussian matches sqrt(2 pi) e^{-xi^2/2}") {
    // L = 16 pi, N = 512: spectral accuracy far below 1e-10 on |xi| <= 8
    SpectralGrid g(1, 512, 16 * M_PI);
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0] / 2); }, g);
    auto fh = fft(f);
    const double peak = std::sqrt(2 * M_PI);
    double max_rel = 0;
    for (int j = 0; j < g.N; ++j) {
        const double xi = g.xi(j);
        if (std::abs(xi) > 8) continue;
        const double expected = peak * std::exp(-xi * xi / 2);
        // relative to the transform's peak: the tail values sit below the
        // float64 roundoff floor of the quadrature
        max_rel = std::max(max_rel, std::abs(fh.at(0, j) - expected) / peak);
    }
    CHECK(max_rel < 1e-10);
}

TEST_CASE("fft of zero is zero") {
    SpectralGrid g(1, 64, 8.0);
    SpinorField f(g, 2, Space::physical);
    auto fh = fft(f);
    for (auto v : fh.data) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("translation becomes modulation of the transform") {
    SpectralGrid g(1, 256, 16.0);
    const double a = 0.75;
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0]); }, g);
    auto fa = sample_scalar([&](const double* x) { return std::exp(-(x[0] - a) * (x[0] - a)); }, g);
    auto fh = fft(f), fah = fft(fa);
    double max_err = 0;
    for (int j = 0; j < g.N; ++j) {
        const cplx expected = std::polar(1.0, -a * g.xi(j)) * fh.at(0, j);
        max_err = std::max(max_err, std::abs(fah.at(0, j) - expected));
    }
    CHECK(max_err < 1e-10);
}

TEST_CASE("ifft inverts fft to 1e-12") {
    SpectralGrid g1(1, 128, 10.0);
    SpectralGrid g2(2, 32, 8.0);
    auto check_roundtrip = [](const SpinorField& f) {
        auto back = ifft(fft(f));
        double num = 0, den = 0;
        for (std::size_t i = 0; i < f.data.size(); ++i) {
            num += std::norm(back.data[i] - f.data[i]);
            den += std::norm(f.data[i]);
        }
        CHECK(std::sqrt(num / den) < 1e-12);
    };
    check_roundtrip(random_field(g1, 2, 5));
    check_roundtrip(random_field(g2, 2, 6));
    check_roundtrip(gaussian_1d(g1));
    // single Fourier mode
    auto mode = sample_scalar(
        [&](const double* x) { return std::polar(1.0, 3 * M_PI * x[0] / g1.L); }, g1);
    check_roundtrip(mode);
}

TEST_CASE("Lebesgue norm of a Gaussian and basic identities") {
    SpectralGrid g(1, 512, 16.0);
    auto f = sample_scalar([](const double* x) { return std::exp(-x[0] * x[0]); }, g);
    // ||e^{-x^2}||_{L^2} = (pi/2)^{1/4}
    CHECK(lebesgue_norm(f, 2) == doctest::Approx(std::pow(M_PI / 2, 0.25)).epsilon(1e-8));

    // homogeneity
    auto cf = f;
    cf *= cplx(-2.5, 0);
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(lebesgue_norm(cf, p) == doctest::Approx(2.5 * lebesgue_norm(f, p)).epsilon(1e-12));
    }
    CHECK(lebesgue_norm(cf, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(2.5 * lebesgue_norm(f, std::numeric_limits<double>::infinity())));

    // two-component (f, i f) has pointwise modulus sqrt(2)|f|
    SpinorField two(g, 2, Space::physical);
    for (int j = 0; j < g.N; ++j) {
        two.at(0, j) = f.at(0, j);
        two.at(1, j) = cplx(0, 1) * f.at(0, j);
    }
    for (double p : {1.0, 2.0, 4.0})
        CHECK(lebesgue_norm(two, p) ==
              doctest::Approx(std::sqrt(2.0) * lebesgue_norm(f, p)).epsilon(1e-12));

    CHECK_THROWS_AS(lebesgue_norm(f, 0.5), std::invalid_argument);
}

TEST_CASE("Parseval: ||fhat||^2 = (2 pi)^d ||f||^2") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uw(0.5, 2.0), uc(-2, 2);
    SpectralGrid g(1, 256, 20.0);
    for (int trial = 0; trial < 10; ++trial) {
        FieldDescriptor desc;
        desc.terms.push_back({uw(rng), {uc(rng)}, {uc(rng)}, {cplx(1, 0), cplx(0.3, 0.4)}, 0.0});
        auto f = sample(desc, g, 2);
        const double lhs = std::pow(lebesgue_norm(fft(f), 2), 2);
        const double rhs = 2 * M_PI * std::pow(lebesgue_norm(f, 2), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("<psi, beta psi> is pointwise real for Hermitian beta") {
    const auto rep = build_clifford(2);
    SpectralGrid g(1, 64, 8.0);
    auto psi = random_field(g, rep.n, 23);
    Eigen::VectorXcd v(rep.n);
    double max_imag = 0, max_mod = 0;
    for (int j = 0; j < g.N; ++j) {
        for (int c = 0; c < rep.n; ++c) v(c) = psi.at(c, j);
        const cplx density = (rep.beta * v).dot(v);
        max_imag = std::max(max_imag, std::abs(density.imag()));
        max_mod = std::max(max_mod, std::abs(density));
    }
    CHECK(max_imag <= 1e-12 * max_mod);
}

TEST_CASE("norms are stable under grid refinement (spectral accuracy)") {
    for (int N : {128}) {
        SpectralGrid coarse(1, N, 16.0), fine(1, 2 * N, 16.0);
        auto fc = gaussian_1d(coarse), ff = gaussian_1d(fine);
        const double nc = lebesgue_norm(fc, 2), nf = lebesgue_norm(ff, 2);
        CHECK(std::abs(nc - nf) / nf < 1e-8);
    }
}

TEST_CASE("inner product matches the L^2 norm and is sesquilinear") {
    SpectralGrid g(1, 128, 10.0);
    auto f = random_field(g, 2, 31);
    auto gfld = random_field(g, 2, 32);
    CHECK(std::abs(inner_product(f, f).real() - std::pow(l2_norm(f), 2)) < 1e-12);
    CHECK(std::abs(inner_product(f, f).imag()) < 1e-14);
    const cplx ip = inner_product(f, gfld);
    CHECK(std::abs(inner_product(gfld, f) - std::conj(ip)) < 1e-12);
}

TEST_CASE("sample flags domain truncation") {
    SpectralGrid g(1, 64, 4.0);
    FieldDescriptor wide;
    wide.terms.push_back({4.0, {}, {}, {cplx(1, 0)}, 0.0});  // barely decays on [-4,4)
    bool truncated = false;
    sample(wide, g, 1, &truncated);
    CHECK(truncated);

    FieldDescriptor narrow;
    narrow.terms.push_back({0.3, {}, {}, {cplx(1, 0)}, 0.0});
    sample(narrow, g, 1, &truncated);
    CHECK_FALSE(truncated);
}

TEST_CASE("sampled families match their formulas") {
    SpectralGrid g(1, 128, 8.0);
    FieldDescriptor desc;
    desc.kind = FieldDescriptor::Kind::chirp;
    desc.terms.push_back({1.5, {0.5}, {2.0}, {cplx(1, 0)}, 0.7});
    auto f = sample(desc, g, 1);
    for (int j : {10, 40, 64, 100}) {
        const double x = g.x(j);
        const double r2 = (x - 0.5) * (x - 0.5);
        const cplx expected =
            std::exp(-r2 / (2 * 1.5 * 1.5)) * std::polar(1.0, 2.0 * x + 0.7 * r2);
        CHECK(std::abs(f.at(0, j) - expected) < 1e-14);
    }
    // gaussian center value is 1, modulated gaussian peaks at its center
    FieldDescriptor gauss;
    gauss.terms.push_back({1.0, {0.0}, {0.0}, {cplx(1, 0)}, 0.0});
    auto fg = sample(gauss, g, 1);
    CHECK(std::abs(fg.at(0, g.N / 2) - cplx(1, 0)) < 1e-14);  // x index N/2 is x=0
}
