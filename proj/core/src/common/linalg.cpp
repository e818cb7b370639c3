#include "dvarma/common/linalg.hpp"

#include <stdexcept>

namespace dvarma {

Eigen::MatrixXd least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    if (X.rows() != Y.rows()) throw std::invalid_argument("least_squares: row mismatch");
    if (X.cols() == 0) return Eigen::MatrixXd(0, Y.cols());
    Eigen::MatrixXd XtX = X.transpose() * X;
    XtX.diagonal().array() += kRidge;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(XtX);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("least_squares: factorization failed");
    Eigen::MatrixXd B = ldlt.solve(X.transpose() * Y);
    if (!B.allFinite()) throw std::runtime_error("least_squares: singular regression");
    return B;
}

double spectral_radius(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
    if (A.rows() == 0) return 0.0;
    if (A.rows() == 1) return std::abs(A(0, 0));
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    if (es.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace dvarma
