#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "needletkit/grids.hpp"
#include "needletkit/sphdir.hpp"

namespace needletkit {

/// Real orthonormal spherical-harmonic coefficients, three channels.
/// The flat (l, m) index is l*l + l + m. The real basis is related to
/// the complex one by a fixed unitary change of basis; the Condon-Shortley
/// phase is included.
struct SHCoeffs {
    int lmax = 0;
    std::array<Eigen::VectorXd, 3> chan;

    explicit SHCoeffs(int lmax_ = 0) : lmax(lmax_) {
        const int n = (lmax + 1) * (lmax + 1);
        for (auto& c : chan) c = Eigen::VectorXd::Zero(n);
    }

    static int index(int l, int m) { return l * l + l + m; }
    int count() const { return (lmax + 1) * (lmax + 1); }
};

inline constexpr int kMaxDegree = 64; // stability envelope of the Legendre recurrence

/// Real orthonormal Y_lm at one direction.
double eval_ylm(int l, int m, const SphDir& dir);

/// All Y_lm for l <= lmax at one direction, flat-indexed (length (lmax+1)^2).
Eigen::VectorXd eval_ylm_all(int lmax, const SphDir& dir);

/// Legendre polynomials P_0..P_lmax at x, for the addition theorem.
void legendre_pl(int lmax, double x, std::span<double> out);

/// Discrete projection a_lm = sum_i f(x_i) Y_lm(x_i) w_i per channel.
/// Throws if the sample set cannot resolve degree lmax.
SHCoeffs sht_forward(std::span<const SphDir> dirs, std::span<const double> weights,
                     const std::array<std::span<const double>, 3>& values, int lmax);

/// Pointwise synthesis f(x) = sum_lm a_lm Y_lm(x) per channel.
std::array<Eigen::VectorXd, 3> sht_inverse(const SHCoeffs& coeffs, std::span<const SphDir> dirs);

} // namespace needletkit
