#include "needletkit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace needletkit {

namespace {

double median_inplace(std::vector<double>& v) {
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (n % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
        m = 0.5 * (m + v[mid - 1]);
    }
    return m;
}

std::vector<double> pooled_band(const NeedletCoeffs& coeffs, int j) {
    if (j < 1 || static_cast<std::size_t>(j) > coeffs.bands.size())
        throw std::invalid_argument("sparse: band " + std::to_string(j) + " does not exist");
    std::vector<double> v;
    for (int ch = 0; ch < 3; ++ch) {
        const auto& b = coeffs.bands[j - 1][ch];
        v.insert(v.end(), b.data(), b.data() + b.size());
    }
    return v;
}

const SparsePrior& prior_for(const std::vector<SparsePrior>& priors, int j, std::size_t n_bands) {
    if (j < 1 || static_cast<std::size_t>(j) > n_bands)
        throw std::invalid_argument("sparse: band " + std::to_string(j) + " does not exist");
    if (static_cast<std::size_t>(j) > priors.size())
        throw std::invalid_argument("sparse: missing prior for band " + std::to_string(j));
    return priors[j - 1];
}

template <typename Shrink>
NeedletCoeffs apply_threshold(const NeedletCoeffs& coeffs, const std::vector<SparsePrior>& priors,
                              const std::set<int>& apply_bands, Shrink shrink) {
    for (int j : apply_bands) prior_for(priors, j, coeffs.bands.size());
    NeedletCoeffs out = coeffs;
    for (int j : apply_bands) {
        const double t = prior_for(priors, j, coeffs.bands.size()).threshold();
        for (int ch = 0; ch < 3; ++ch) {
            auto& b = out.bands[j - 1][ch];
            for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = shrink(b[i], t);
        }
    }
    return out;
}

} // namespace

SparsePrior estimate_prior(const NeedletCoeffs& coeffs, int j) {
    std::vector<double> band = pooled_band(coeffs, j);
    if (band.size() < 8) throw std::invalid_argument("estimate_prior: band too small (< 8 coefficients)");

    std::vector<double> tmp = band;
    const double med = median_inplace(tmp);
    for (std::size_t i = 0; i < band.size(); ++i) tmp[i] = std::abs(band[i] - med);
    const double mad = median_inplace(tmp);

    SparsePrior prior;
    prior.sigma_eta2 = std::max(1.4826 * mad * 1.4826 * mad, 1e-12);
    double mean = 0.0;
    for (double x : band) mean += x;
    mean /= static_cast<double>(band.size());
    double var = 0.0;
    for (double x : band) var += (x - mean) * (x - mean);
    var /= static_cast<double>(band.size());
    prior.sigma_phi2 = std::max(var - prior.sigma_eta2, 0.1 * prior.sigma_eta2);
    return prior;
}

NeedletCoeffs soft_threshold(const NeedletCoeffs& coeffs, const std::vector<SparsePrior>& priors,
                             const std::set<int>& apply_bands) {
    return apply_threshold(coeffs, priors, apply_bands, [](double beta, double t) {
        const double mag = std::abs(beta) - t;
        return mag > 0.0 ? std::copysign(mag, beta) : 0.0;
    });
}

NeedletCoeffs hard_threshold(const NeedletCoeffs& coeffs, const std::vector<SparsePrior>& priors,
                             const std::set<int>& apply_bands) {
    return apply_threshold(coeffs, priors, apply_bands,
                           [](double beta, double t) { return std::abs(beta) > t ? beta : 0.0; });
}

std::set<int> high_frequency_bands(const NeedletFrame& frame) {
    std::set<int> bands;
    for (int j = 2; j <= frame.j_max; ++j) bands.insert(j);
    return bands;
}

} // namespace needletkit
