#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qig/errors.hpp"

namespace qig {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Hermitian, unit-trace, positive-semidefinite matrix of dimension 2, 3 or 4.
struct DensityMatrix {
    CMat m;

    int dim() const { return static_cast<int>(m.rows()); }
};

bool is_hermitian(const CMat& m, double tol = kHermTol);

/// Validating constructor; throws on any broken invariant.
DensityMatrix make_density(const CMat& m);

struct EigenSystem {
    RVec values;   // ascending
    CMat vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

/// Eigendecomposition with the DensityMatrix contract: nonnegative values
/// summing to one, reconstruction error below 1e-10.
EigenSystem eigensystem(const DensityMatrix& rho);

/// Partial transpose over one qubit of a 2x2 system (computational basis).
enum class Subsystem { A, B };
CMat partial_transpose(const CMat& rho, Subsystem sub = Subsystem::B);

/// Peres test. Exact for 2x2 (dim 2 is trivially separable).
/// Boundary states (min PT eigenvalue >= -tol) count as separable.
bool is_separable(const CMat& rho, double tol = kPsdTol);
bool is_separable(const DensityMatrix& rho, double tol = kPsdTol);

// Bell basis, columns ordered (Phi+, Phi-, Psi+, Psi-).
const CMat& bell_basis();

/// 4x4 matrix diagonal in the Bell basis, expressed in the computational
/// basis. Weights need not be a probability vector (formal states allowed).
CMat bell_diagonal(const Eigen::Vector4d& weights);

/// Min eigenvalue of the partial transpose; for Bell-diagonal input this is
/// 1/2 - max weight.
double ppt_min_eigenvalue(const CMat& rho);

}  // namespace qig
