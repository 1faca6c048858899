#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "needletkit/needletkit.hpp"

namespace nktest {

namespace nk = needletkit;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline nk::SphDir random_dir(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> uz(-1.0, 1.0), up(0.0, nk::kTwoPi);
    return nk::SphDir(std::acos(uz(gen)), up(gen));
}

/// Random band-limited coefficients with support on l = 0 and 2..lmax.
/// Degree 1 is excluded: the frame's bands start at j = 1 and do not
/// cover it, so it is outside the representable space.
inline nk::SHCoeffs random_bandlimited(int lmax, std::mt19937_64& gen, double amplitude = 1.0) {
    nk::SHCoeffs sh(lmax);
    std::normal_distribution<double> gauss(0.0, amplitude);
    for (int ch = 0; ch < 3; ++ch) {
        sh.chan[ch][0] = std::abs(gauss(gen)) + 1.0;
        for (int l = 2; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) sh.chan[ch][nk::SHCoeffs::index(l, m)] = gauss(gen);
    }
    return sh;
}

inline double rel_l2(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
    const double denom = want.norm();
    return (got - want).norm() / (denom > 0.0 ? denom : 1.0);
}

/// Panorama with a smooth ambient floor plus Gaussian-blob light sources.
inline nk::EquirectMap blob_map(int H, int W, const std::vector<nk::SphDir>& sources, double intensity,
                                double ambient = 0.05, double sharpness = 30.0) {
    nk::EquirectMap map(H, W);
    const auto geom = nk::equirect_geometry(H, W);
    for (std::size_t i = 0; i < geom.size(); ++i) {
        double v = ambient;
        for (const auto& s : sources) {
            const double d = nk::geodesic_distance(geom[i].first, s);
            v += intensity * std::exp(-sharpness * d * d);
        }
        for (int ch = 0; ch < 3; ++ch) map.data[ch][i] = v * (1.0 + 0.1 * ch);
    }
    return map;
}

inline double map_rel_l2(const nk::EquirectMap& got, const nk::EquirectMap& want) {
    double num = 0.0, den = 0.0;
    for (int ch = 0; ch < 3; ++ch)
        for (std::size_t i = 0; i < got.pixels(); ++i) {
            const double d = got.data[ch][i] - want.data[ch][i];
            num += d * d;
            den += want.data[ch][i] * want.data[ch][i];
        }
    return std::sqrt(num / (den > 0.0 ? den : 1.0));
}

} // namespace nktest
