#pragma once

// Susskind-Glogower phase operators: P|n> = |n-1>, P|0> = 0, P^dagger|n> = |n+1>.
//
//   (-i)^(n-m) <n| exp(iy(P + P^dagger)) |m> = J_{n-m}(2y) + (-1)^m J_{n+m+2}(2y)

#include <Eigen/Dense>

#include "ladder/types.hpp"

namespace ladder {

struct PhaseMatrices {
    long size = 0;
    Eigen::MatrixXi P;
    Eigen::MatrixXi P_dagger;
};

/// Window |0> .. |size-1>. Throws std::invalid_argument for size < 2.
PhaseMatrices build_phase(long size);

/// [P, P^dagger] in integer arithmetic. On a window it is diag(1, 0, ..., 0, -1);
/// the last entry is the truncation edge.
Eigen::MatrixXi phase_commutator(const PhaseMatrices& m);

/// True when c restricted to the first `core` rows and columns is the (0,0) unit impulse.
bool is_unit_impulse(const Eigen::MatrixXi& c, long core);

/// <n| exp(iy(P + P^dagger)) |m> from the Bessel closed form. n, m >= 0.
Complex phase_element(long n, long m, double y);

/// (n+1) J_{n+1}(2y) / y, summed without the division (value delta_{n0} at y = 0).
double phase_gn(long n, double y);

/// J_{n-m}(2y) + (-1)^m J_{n+m+2}(2y).
double phase_gnm(long n, long m, double y);

/// |dG_{n+1}/dy - (G_n - G_{n+2})| with a central difference, h = 1e-5.
double phase_recursion_residual(long n, double y);

/// <n| exp(iy(P + P^dagger)) |m> by brute-force expm on the window |0> .. |size-1>.
Complex phase_oracle(long n, long m, double y, long size = 60);

} // namespace ladder
