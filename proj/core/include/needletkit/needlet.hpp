#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "needletkit/grids.hpp"
#include "needletkit/harmonics.hpp"
#include "needletkit/image.hpp"

namespace needletkit {

/// Smooth needlet frequency window b with compact support (1/B, B).
/// Built from the Littlewood-Paley difference of a smoothed step, so that
/// sum_{j>=0} b(l/B^j)^2 = 1 for every integer l >= 1.
class NeedletWindow {
public:
    explicit NeedletWindow(double B);

    double B() const { return B_; }
    double operator()(double xi) const;

    /// max_{l in [1, lmax]} |sum_j b(l/B^j)^2 - 1|
    double partition_error(int lmax) const;

private:
    double phi(double t) const;   // smoothed step: 1 on [0,1/B], 0 on [1,inf)
    double psi(double u) const;   // normalized bump integral on [-1,1]

    double B_ = 2.0;
    std::vector<double> cum_;     // cumulative bump integral, tabulated
    double total_ = 0.0;
    int samples_ = 0;
};

/// Needlet system: window, bands j = 1..j_max with cubature anchors, and
/// the per-band window values b(l/B^j) on the covered degrees.
struct NeedletFrame {
    std::shared_ptr<const NeedletWindow> window;
    double B = 2.0;
    int j_max = 3;
    CubatureScheme scheme = CubatureScheme::PaperMatching;
    std::vector<CubatureBand> bands;            // bands[j-1]
    std::vector<Eigen::VectorXd> band_b;        // band_b[j-1][l], l = 0..lmax()

    static NeedletFrame build(double B, int j_max, CubatureScheme scheme);

    int lmax() const;                // floor(B^(j_max+1))
    int band_lmin(int j) const;      // ceil(B^(j-1))
    int band_lmax(int j) const;      // floor(B^(j+1))
    std::size_t band_coefficients() const; // total cubature points over all bands
};

/// Per-channel DC term plus band coefficients anchored to cubature points.
struct NeedletCoeffs {
    std::array<double, 3> dc{0.0, 0.0, 0.0};
    std::vector<std::array<Eigen::VectorXd, 3>> bands; // bands[j-1][channel]

    static NeedletCoeffs zeros_like(const NeedletFrame& frame);
    bool matches(const NeedletFrame& frame) const;
};

/// psi_jk evaluated at one direction (band j, point k, 1-based j).
double needlet_basis(const NeedletFrame& frame, int j, int k, const SphDir& x);

/// beta_jk = sqrt(lambda_jk) sum_l b(l/B^j) sum_m a_lm Y_lm(xi_jk);
/// dc holds the mean radiance derived from a_00.
NeedletCoeffs analyze(const SHCoeffs& coeffs, const NeedletFrame& frame);
NeedletCoeffs analyze(const EquirectMap& map, const NeedletFrame& frame);

/// I(x) = dc + sum_jk beta_jk psi_jk(x) at arbitrary directions.
std::array<Eigen::VectorXd, 3> synthesize_at(const NeedletCoeffs& coeffs, const NeedletFrame& frame,
                                             std::span<const SphDir> dirs);

/// Reconstruction on an H x W equirectangular grid. Negative values are
/// preserved; clamping is the caller's choice.
EquirectMap synthesize(const NeedletCoeffs& coeffs, const NeedletFrame& frame, int H, int W);

} // namespace needletkit
