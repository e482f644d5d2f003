#include "qig/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qig {

bool is_hermitian(const CMat& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix make_density(const CMat& m) {
    const int d = static_cast<int>(m.rows());
    if (m.cols() != m.rows() || (d != 2 && d != 3 && d != 4))
        throw DimensionError("density matrix must be square with dim in {2,3,4}");
    if (!is_hermitian(m))
        throw NonHermitianInput("density matrix not Hermitian to 1e-12");
    if (std::abs(m.trace().real() - 1.0) > kTraceTol || std::abs(m.trace().imag()) > kTraceTol)
        throw DomainError("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw InfeasiblePoint("density matrix has eigenvalue below -1e-10");
    return DensityMatrix{m};
}

EigenSystem eigensystem(const DensityMatrix& rho) {
    if (!is_hermitian(rho.m)) throw NonHermitianInput("eigensystem: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(rho.m);
    EigenSystem out{es.eigenvalues(), es.eigenvectors()};
    const CMat recon = out.vectors * out.values.asDiagonal() * out.vectors.adjoint();
    if ((recon - rho.m).cwiseAbs().maxCoeff() > 1e-10)
        throw NonHermitianInput("eigensystem: reconstruction error above 1e-10");
    return out;
}

CMat partial_transpose(const CMat& rho, Subsystem sub) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionError("partial_transpose needs a 4x4 (2x2 bipartite) matrix");
    CMat out(4, 4);
    // index (a,b) with a,b in {0,1}: row = 2a+b
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    if (sub == Subsystem::B)
                        out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
                    else
                        out(2 * a + b, 2 * c + d) = rho(2 * c + b, 2 * a + d);
                }
    return out;
}

double ppt_min_eigenvalue(const CMat& rho) {
    const CMat pt = partial_transpose(rho, Subsystem::B);
    Eigen::SelfAdjointEigenSolver<CMat> es(pt, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_separable(const CMat& rho, double tol) {
    const int d = static_cast<int>(rho.rows());
    if (d == 2) return true;
    if (d != 4) throw DimensionError("Peres test defined for dim 2 and 4 only");
    return ppt_min_eigenvalue(rho) >= -tol;
}

bool is_separable(const DensityMatrix& rho, double tol) { return is_separable(rho.m, tol); }

const CMat& bell_basis() {
    static const CMat B = [] {
        CMat b(4, 4);
        const double s = 1.0 / std::sqrt(2.0);
        b.setZero();
        // |00>,|01>,|10>,|11> rows
        b(0, 0) = s;  b(3, 0) = s;    // Phi+
        b(0, 1) = s;  b(3, 1) = -s;   // Phi-
        b(1, 2) = s;  b(2, 2) = s;    // Psi+
        b(1, 3) = s;  b(2, 3) = -s;   // Psi-
        return b;
    }();
    return B;
}

CMat bell_diagonal(const Eigen::Vector4d& w) {
    const CMat& B = bell_basis();
    CMat diag = CMat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) diag(i, i) = w(i);
    return B * diag * B.adjoint();
}

}  // namespace qig
