#include "fqs/types.hpp"

#include <Eigen/SVD>

namespace fqs {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::NonHermitianPair: return "NonHermitianPair";
    case ErrorCode::ProfileViolation: return "ProfileViolation";
    case ErrorCode::QuadratureResidual: return "QuadratureResidual";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::LTooSmall: return "LTooSmall";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::NonUnitaryTerm: return "NonUnitaryTerm";
    case ErrorCode::MissingModeEncoding: return "MissingModeEncoding";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, -I1, I1, 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double spectral_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    if (a.rows() == 1 || a.cols() == 1) return a.norm();
    if (a.rows() > 64 && a.cols() > 64) {
        Eigen::BDCSVD<Mat> svd(a);
        return svd.singularValues()(0);
    }
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

double hermiticity_defect(const Mat& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Mat& u) {
    return (u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace fqs
