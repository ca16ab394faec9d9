#include <doctest.h>

#include <random>

#include "dirach/clifford.hpp"
#include "oracles.hpp"

using namespace dirach;

namespace {

// brute-force anticommutator check, independent of check_relations
bool brute_force_relations(const std::vector<Matrix>& alphas, const Matrix& beta) {
    const auto n = beta.rows();
    const Matrix eye = Matrix::Identity(n, n);
    auto near_zero = [](const Matrix& m) { return m.cwiseAbs().maxCoeff() < 1e-14; };
    if (!near_zero(beta * beta - eye)) return false;
    for (const auto& a : alphas) {
        if (!near_zero(a * beta + beta * a)) return false;
        if (!near_zero(a - a.adjoint())) return false;
    }
    for (size_t j = 0; j < alphas.size(); ++j)
        for (size_t k = 0; k < alphas.size(); ++k) {
            const Matrix anti = alphas[j] * alphas[k] + alphas[k] * alphas[j];
            if (!near_zero(anti - (j == k ? 2.0 : 0.0) * eye)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("d=3 matches the standard Dirac basis") {
    const auto rep = build_clifford(3);
    REQUIRE(rep.n == 4);
    const Matrix s1 = pauli::sigma1(), s2 = pauli::sigma2(), s3 = pauli::sigma3();
    const Matrix sig[3] = {s1, s2, s3};
    for (int j = 0; j < 3; ++j) {
        Matrix expected = Matrix::Zero(4, 4);
        expected.block(0, 2, 2, 2) = sig[j];
        expected.block(2, 0, 2, 2) = sig[j];
        CHECK((rep.alphas[j] - expected).cwiseAbs().maxCoeff() == 0.0);
    }
    Matrix beta = Matrix::Zero(4, 4);
    beta.block(0, 0, 2, 2) = Matrix::Identity(2, 2);
    beta.block(2, 2, 2, 2) = -Matrix::Identity(2, 2);
    CHECK((rep.beta - beta).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("low-dimensional pairs satisfy all relations (brute force)") {
    // d=1: (sigma_1, sigma_3)
    auto rep1 = build_clifford(1);
    CHECK((rep1.alphas[0] - pauli::sigma1()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rep1.beta - pauli::sigma3()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(brute_force_relations(rep1.alphas, rep1.beta));
    // d=2: (sigma_1, sigma_2, sigma_3)
    auto rep2 = build_clifford(2);
    CHECK((rep2.alphas[0] - pauli::sigma1()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rep2.alphas[1] - pauli::sigma2()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((rep2.beta - pauli::sigma3()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(brute_force_relations(rep2.alphas, rep2.beta));
}

TEST_CASE("relations hold for 1 <= d <= 8 at 100 eps") {
    for (int d = 1; d <= 8; ++d) {
        const auto rep = build_clifford(d);
        CHECK(rep.n == spinor_components(d));
        const auto report = check_relations(rep);
        CHECK(report.max_violation() <= kRelationTol);
    }
}

TEST_CASE("spinor size doubles from even to next odd dimension") {
    CHECK(spinor_components(1) == 2);
    CHECK(spinor_components(2) == 2);
    CHECK(spinor_components(3) == 4);
    CHECK(spinor_components(4) == 4);
    CHECK(spinor_components(5) == 8);
    for (int d = 2; d <= 10; d += 2)
        CHECK(spinor_components(d + 1) == 2 * spinor_components(d));
}

TEST_CASE("check_relations reports deliberate violations") {
    SUBCASE("beta replaced by identity") {
        auto rep = build_clifford(1);
        rep.beta = Matrix::Identity(2, 2);
        const auto report = check_relations(rep);
        CHECK(report.alpha_beta == doctest::Approx(2.0));  // sigma_1 I + I sigma_1 = 2 sigma_1
    }
    SUBCASE("alpha_1 scaled by 2") {
        auto rep = build_clifford(1);
        rep.alphas[0] *= 2.0;
        const auto report = check_relations(rep);
        CHECK(report.alpha_alpha == doctest::Approx(3.0));  // (2 sigma_1)^2 - I = 3 I
    }
}

TEST_CASE("H(xi)^2 = (m^2 + |xi|^2) I at random xi and m") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int d : {1, 2, 3, 4}) {
        const auto rep = build_clifford(d);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> xi(d);
            double xi2 = 0;
            for (auto& v : xi) {
                v = u(rng);
                xi2 += v * v;
            }
            const double m = std::abs(u(rng));
            const Matrix h = dirac_symbol(rep, xi, m);
            const Matrix expected = (m * m + xi2) * Matrix::Identity(rep.n, rep.n);
            const double rel = (h * h - expected).cwiseAbs().maxCoeff() / (m * m + xi2);
            CHECK(rel < 1e-12);
        }
    }
}

TEST_CASE("dimension bounds rejected") {
    CHECK_THROWS_AS(build_clifford(0), std::invalid_argument);
    CHECK_THROWS_AS(build_clifford(-2), std::invalid_argument);
    CHECK_THROWS_AS(build_clifford(kMaxCliffordDim + 1), std::invalid_argument);
}
