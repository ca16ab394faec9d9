#pragma once

// Representations of the Dirac anticommutation algebra
//
//   beta^2 = I,   alpha_j beta + beta alpha_j = 0,
//   alpha_j alpha_k + alpha_k alpha_j = 2 delta_jk I,
//
// with d Hermitian alphas and one Hermitian beta acting on C^n,
// n = 2^floor((d+1)/2).
//
// Construction (deterministic, fixed basis convention):
//   d = 1 : alpha_1 = sigma_1, beta = sigma_3
//   d odd : from the (d-1)-rep {alpha'_j, beta'} on C^{n'},
//           alpha_j = sigma_1 (x) alpha'_j,  alpha_d = sigma_1 (x) beta',
//           beta = sigma_3 (x) I.
//   d even: the (d-1)-rep plus the chirality element
//           alpha_d = c * alpha_1 ... alpha_{d-1} beta,  c in {1, i}
//           chosen so alpha_d is Hermitian with alpha_d^2 = I.
//
// For d = 3 this reproduces the Dirac basis
//   alpha_j = offdiag(sigma_j, sigma_j), beta = diag(I_2, -I_2).

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirach {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct CliffordRep {
    int d = 0;                   // spatial dimension
    int n = 0;                   // spinor components, n = 2^floor((d+1)/2)
    std::vector<Matrix> alphas;  // d Hermitian n x n matrices
    Matrix beta;                 // Hermitian n x n matrix
};

// Max absolute violation of each defining identity.
struct RelationReport {
    double beta_square = 0;        // max |(beta^2 - I)_ij|
    double alpha_beta = 0;         // max over j of |(alpha_j beta + beta alpha_j)_ij|
    double alpha_alpha = 0;        // max over j,k of |(a_j a_k + a_k a_j - 2 d_jk I)_ij|
    double hermiticity = 0;        // max |(A - A^H)_ij| over all d+1 matrices

    double max_violation() const {
        return std::max(std::max(beta_square, alpha_beta),
                        std::max(alpha_alpha, hermiticity));
    }
};

inline constexpr double kRelationTol = 100 * std::numeric_limits<double>::epsilon();
inline constexpr int kMaxCliffordDim = 16;  // n <= 256

inline int spinor_components(int d) {
    return 1 << ((d + 1) / 2);
}

namespace pauli {
inline Matrix sigma1() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix sigma2() {
    Matrix m(2, 2);
    m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    return m;
}
inline Matrix sigma3() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline RelationReport check_relations(const CliffordRep& rep) {
    const int n = static_cast<int>(rep.beta.rows());
    const Matrix eye = Matrix::Identity(n, n);
    RelationReport r;
    r.beta_square = (rep.beta * rep.beta - eye).cwiseAbs().maxCoeff();
    r.hermiticity = (rep.beta - rep.beta.adjoint()).cwiseAbs().maxCoeff();
    for (const auto& a : rep.alphas) {
        r.alpha_beta = std::max(r.alpha_beta,
                                (a * rep.beta + rep.beta * a).cwiseAbs().maxCoeff());
        r.hermiticity = std::max(r.hermiticity,
                                 (a - a.adjoint()).cwiseAbs().maxCoeff());
    }
    for (size_t j = 0; j < rep.alphas.size(); ++j)
        for (size_t k = 0; k <= j; ++k) {
            // j == k reported as alpha_j^2 - I (half the symmetrized form)
            const Matrix anti =
                (j == k) ? Matrix(rep.alphas[j] * rep.alphas[j] - eye)
                         : Matrix(rep.alphas[j] * rep.alphas[k] +
                                  rep.alphas[k] * rep.alphas[j]);
            r.alpha_alpha = std::max(r.alpha_alpha, anti.cwiseAbs().maxCoeff());
        }
    return r;
}

inline CliffordRep build_clifford(int d) {
    if (d < 1 || d > kMaxCliffordDim)
        throw std::invalid_argument("dimension-unsupported: d must satisfy 1 <= d <= " +
                                    std::to_string(kMaxCliffordDim));

    CliffordRep rep;
    rep.d = 1;
    rep.n = 2;
    rep.alphas = {pauli::sigma1()};
    rep.beta = pauli::sigma3();

    for (int dim = 2; dim <= d; ++dim) {
        if (dim % 2 == 0) {
            // chirality element closes the even-dimensional algebra at the same n
            Matrix p = rep.alphas[0];
            for (size_t j = 1; j < rep.alphas.size(); ++j) p = p * rep.alphas[j];
            p = p * rep.beta;
            const cplx zeta = (p * p)(0, 0);  // p^2 = zeta * I, zeta = +-1
            const cplx c = (zeta.real() > 0) ? cplx(1, 0) : cplx(0, 1);
            rep.alphas.push_back(c * p);
            rep.d = dim;
        } else {
            const Matrix eye = Matrix::Identity(rep.n, rep.n);
            std::vector<Matrix> alphas;
            alphas.reserve(dim);
            for (const auto& a : rep.alphas) alphas.push_back(kron(pauli::sigma1(), a));
            alphas.push_back(kron(pauli::sigma1(), rep.beta));
            rep.beta = kron(pauli::sigma3(), eye);
            rep.alphas = std::move(alphas);
            rep.n *= 2;
            rep.d = dim;
        }
    }

    return rep;
}

// Dirac symbol H(xi) = m*beta + sum_j alpha_j xi_j; satisfies H^2 = (m^2+|xi|^2) I.
inline Matrix dirac_symbol(const CliffordRep& rep, const std::vector<double>& xi, double m) {
    if (static_cast<int>(xi.size()) != rep.d)
        throw std::invalid_argument("dirac_symbol: xi dimension mismatch");
    Matrix h = m * rep.beta;
    for (int j = 0; j < rep.d; ++j) h += xi[j] * rep.alphas[j];
    return h;
}

}  // namespace dirach
