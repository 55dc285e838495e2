#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fqs {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cd>;

inline constexpr cd I1{0.0, 1.0};

enum class ErrorCode {
    NonHermitianPair,
    ProfileViolation,
    QuadratureResidual,
    InvalidEpsilon,
    LTooSmall,
    NonHermitian,
    StepUnderflow,
    IndexOutOfRange,
    NegativeCoefficient,
    NonUnitaryTerm,
    MissingModeEncoding,
    AllZero,
    InvalidConfig,
};

const char* error_name(ErrorCode c);

// Carries a machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }
    const char* name() const { return error_name(code_); }

private:
    ErrorCode code_;
};

// Pauli matrices and small helpers
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat kron(const Mat& a, const Mat& b);

double spectral_norm(const Mat& a);
double hermiticity_defect(const Mat& a);
double unitarity_defect(const Mat& u);

}  // namespace fqs
