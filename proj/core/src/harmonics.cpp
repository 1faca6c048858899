#include "needletkit/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace needletkit {

namespace {

// Fully normalized associated Legendre P~_lm(cos theta) for m >= 0,
// Condon-Shortley phase included, so that the real basis is
//   Y_l0 = P~_l0,  Y_lm = sqrt(2) P~_lm cos(m phi),
//   Y_l,-m = sqrt(2) P~_lm sin(m phi)  (m > 0).
// out is indexed by l*(l+1)/2 + m, length (lmax+1)(lmax+2)/2.
void normalized_plm(int lmax, double ct, double st, std::vector<double>& out) {
    const auto idx = [](int l, int m) { return l * (l + 1) / 2 + m; };
    out.assign((lmax + 1) * (lmax + 2) / 2, 0.0);
    out[0] = 1.0 / std::sqrt(kFourPi);
    for (int m = 1; m <= lmax; ++m)
        out[idx(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * out[idx(m - 1, m - 1)];
    for (int m = 0; m < lmax; ++m)
        out[idx(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * ct * out[idx(m, m)];
    for (int m = 0; m <= lmax; ++m) {
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
            const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                                       (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
            out[idx(l, m)] = a * (ct * out[idx(l - 1, m)] - b * out[idx(l - 2, m)]);
        }
    }
}

void check_degree(int l) {
    if (l < 0) throw std::invalid_argument("spherical harmonic degree < 0");
    if (l > kMaxDegree) throw std::invalid_argument("spherical harmonic degree above supported lmax = 64");
}

} // namespace

double eval_ylm(int l, int m, const SphDir& dir) {
    check_degree(l);
    if (std::abs(m) > l) throw std::invalid_argument("eval_ylm: |m| > l");
    const Eigen::VectorXd all = eval_ylm_all(l, dir);
    return all[SHCoeffs::index(l, m)];
}

Eigen::VectorXd eval_ylm_all(int lmax, const SphDir& dir) {
    check_degree(lmax);
    const double ct = std::cos(dir.theta());
    const double st = std::sin(dir.theta());
    thread_local std::vector<double> plm;
    normalized_plm(lmax, ct, st, plm);
    const auto idx = [](int l, int m) { return l * (l + 1) / 2 + m; };

    Eigen::VectorXd out((lmax + 1) * (lmax + 1));
    const double sqrt2 = std::sqrt(2.0);
    for (int l = 0; l <= lmax; ++l) out[SHCoeffs::index(l, 0)] = plm[idx(l, 0)];
    for (int m = 1; m <= lmax; ++m) {
        const double cm = std::cos(m * dir.phi());
        const double sm = std::sin(m * dir.phi());
        for (int l = m; l <= lmax; ++l) {
            const double p = sqrt2 * plm[idx(l, m)];
            out[SHCoeffs::index(l, m)] = p * cm;
            out[SHCoeffs::index(l, -m)] = p * sm;
        }
    }
    return out;
}

void legendre_pl(int lmax, double x, std::span<double> out) {
    if (static_cast<int>(out.size()) < lmax + 1) throw std::invalid_argument("legendre_pl: output too small");
    out[0] = 1.0;
    if (lmax >= 1) out[1] = x;
    for (int l = 2; l <= lmax; ++l)
        out[l] = ((2.0 * l - 1.0) * x * out[l - 1] - (l - 1.0) * out[l - 2]) / l;
}

SHCoeffs sht_forward(std::span<const SphDir> dirs, std::span<const double> weights,
                     const std::array<std::span<const double>, 3>& values, int lmax) {
    check_degree(lmax);
    if (dirs.size() != weights.size()) throw std::invalid_argument("sht_forward: dirs/weights size mismatch");
    for (const auto& v : values)
        if (v.size() != dirs.size()) throw std::invalid_argument("sht_forward: values size mismatch");
    const std::size_t ncoef = static_cast<std::size_t>(lmax + 1) * (lmax + 1);
    if (dirs.size() < ncoef)
        throw std::invalid_argument("sht_forward: lmax too high for the sample set (needs at least (lmax+1)^2 samples)");

    SHCoeffs coeffs(lmax);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (weights[i] <= 0.0) throw std::invalid_argument("sht_forward: non-positive weight");
        const Eigen::VectorXd y = eval_ylm_all(lmax, dirs[i]);
        for (int c = 0; c < 3; ++c) coeffs.chan[c] += (values[c][i] * weights[i]) * y;
    }
    return coeffs;
}

std::array<Eigen::VectorXd, 3> sht_inverse(const SHCoeffs& coeffs, std::span<const SphDir> dirs) {
    std::array<Eigen::VectorXd, 3> out;
    for (auto& o : out) o = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const Eigen::VectorXd y = eval_ylm_all(coeffs.lmax, dirs[i]);
        for (int c = 0; c < 3; ++c) out[c][static_cast<Eigen::Index>(i)] = coeffs.chan[c].dot(y);
    }
    return out;
}

} // namespace needletkit
