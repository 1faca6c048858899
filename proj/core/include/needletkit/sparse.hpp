#pragma once

#include <set>
#include <vector>

#include "needletkit/needlet.hpp"

namespace needletkit {

/// Per-band scalar covariances of the signal model beta = s + phi + eta
/// (sparse sources + Gaussian ambient + Gaussian noise), plus the Laplace
/// rate lambda of the source prior.
struct SparsePrior {
    double sigma_eta2 = 0.0; // noise variance
    double sigma_phi2 = 0.0; // ambient variance
    double lambda = 1.0;

    /// Shrinkage threshold t = (sigma_phi2 + sigma_eta2) * lambda, the
    /// scalar reduction of the matrix MAP threshold.
    double threshold() const { return (sigma_phi2 + sigma_eta2) * lambda; }
};

/// Robust per-band variance split: sigma_eta2 from the MAD, sigma_phi2 as
/// the variance excess over it. lambda is left at its default.
SparsePrior estimate_prior(const NeedletCoeffs& coeffs, int j);

/// MAP shrinkage s = sign(beta) * max(|beta| - t, 0) on the listed bands;
/// other bands and the DC term pass through unchanged.
NeedletCoeffs soft_threshold(const NeedletCoeffs& coeffs, const std::vector<SparsePrior>& priors,
                             const std::set<int>& apply_bands);

/// Ablation variant: keep beta where |beta| > t, zero otherwise.
NeedletCoeffs hard_threshold(const NeedletCoeffs& coeffs, const std::vector<SparsePrior>& priors,
                             const std::set<int>& apply_bands);

/// Bands j >= 2, the default sparsification target.
std::set<int> high_frequency_bands(const NeedletFrame& frame);

} // namespace needletkit
