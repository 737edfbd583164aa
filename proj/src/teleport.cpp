#include "qfit/teleport.hpp"

#include <cmath>

namespace qfit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ComplexMatrix bell_vector(int i) {
    ComplexMatrix v(4, 1);
    switch (i) {
        case 0: v(1, 0) = kInvSqrt2; v(2, 0) = -kInvSqrt2; break;
        case 1: v(0, 0) = kInvSqrt2; v(3, 0) = -kInvSqrt2; break;
        case 2: v(0, 0) = kInvSqrt2; v(3, 0) = kInvSqrt2; break;
        default: v(1, 0) = kInvSqrt2; v(2, 0) = kInvSqrt2; break;
    }
    return v;
}

void check_density_shape(const ComplexMatrix& rho, std::size_t dim, const char* who) {
    if (rho.rows() != dim || rho.cols() != dim)
        throw InvalidStateError(std::string(who) + ": wrong dimension");
    if (rho.hermiticity_residual() > 1e-8 || std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-8)
        throw InvalidStateError(std::string(who) + ": input is not a density matrix");
}

}  // namespace

const std::array<ComplexMatrix, 4>& bell_basis() {
    static const std::array<ComplexMatrix, 4> basis = {bell_vector(0), bell_vector(1), bell_vector(2),
                                                       bell_vector(3)};
    return basis;
}

BellProbabilities bell_probabilities(const ComplexMatrix& rho_res) {
    check_density_shape(rho_res, 4, "bell_probabilities");
    BellProbabilities bp;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const ComplexMatrix& v = bell_basis()[i];
        const ComplexMatrix amp = v.adjoint() * rho_res * v;
        double p = amp(0, 0).real();
        if (p < 0.0) p = 0.0;
        if (p > 1.0) p = 1.0;
        bp.p[i] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12 && sum > 0.0)
        for (double& p : bp.p) p /= sum;
    return bp;
}

ComplexMatrix teleport_single(const ComplexMatrix& rho_res, const ComplexMatrix& probe) {
    check_density_shape(probe, 2, "teleport_single");
    const BellProbabilities bp = bell_probabilities(rho_res);
    ComplexMatrix out(2, 2);
    for (int i = 0; i < 4; ++i) {
        if (bp.p[i] == 0.0) continue;
        out += bp.p[i] * (pauli(i) * probe * pauli(i));
    }
    return out;
}

ComplexMatrix teleport_double(const ComplexMatrix& rho_res, const ComplexMatrix& probe2) {
    check_density_shape(probe2, 4, "teleport_double");
    const BellProbabilities bp = bell_probabilities(rho_res);
    ComplexMatrix out(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double w = bp.p[i] * bp.p[j];
            if (w == 0.0) continue;
            const ComplexMatrix op = tensor(pauli(i), pauli(j));
            out += w * (op * probe2 * op);
        }
    return out;
}

}  // namespace qfit
