#include "needletkit/grids.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace needletkit {

CubatureScheme parse_scheme(std::string_view name) {
    if (name == "paper_matching") return CubatureScheme::PaperMatching;
    if (name == "exact") return CubatureScheme::Exact;
    throw std::invalid_argument("unsupported cubature scheme: " + std::string(name));
}

std::string_view scheme_name(CubatureScheme scheme) {
    switch (scheme) {
        case CubatureScheme::PaperMatching: return "paper_matching";
        case CubatureScheme::Exact: return "exact";
    }
    throw std::invalid_argument("bad scheme enum");
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-based initial guess.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int l = 0; l < n; ++l) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * l + 1.0) * x * p1 - l * p2) / (l + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

QuadGrid gauss_product_grid(int lmax_exact) {
    if (lmax_exact < 0) throw std::invalid_argument("gauss_product_grid: lmax_exact < 0");
    const int ntheta = lmax_exact + 1;
    const int nphi = 2 * lmax_exact + 1;
    std::vector<double> z, wz;
    gauss_legendre(ntheta, z, wz);

    QuadGrid grid;
    grid.lmax_exact = lmax_exact;
    grid.dirs.reserve(static_cast<std::size_t>(ntheta) * nphi);
    grid.weights.reserve(static_cast<std::size_t>(ntheta) * nphi);
    const double wphi = kTwoPi / nphi;
    for (int it = 0; it < ntheta; ++it) {
        const double theta = std::acos(std::clamp(z[it], -1.0, 1.0));
        for (int ip = 0; ip < nphi; ++ip) {
            grid.dirs.emplace_back(theta, (ip + 0.5) * wphi);
            grid.weights.push_back(wz[it] * wphi);
        }
    }
    return grid;
}

std::vector<SphDir> healpix_ring_centers(int nside) {
    if (nside < 1) throw std::invalid_argument("healpix_ring_centers: nside < 1");
    const long n = nside;
    const long npix = 12 * n * n;
    const long ncap = 2 * n * (n - 1);
    std::vector<SphDir> out;
    out.reserve(npix);
    for (long p = 0; p < npix; ++p) {
        double z, phi;
        if (p < ncap) { // north polar cap
            const double hip = 0.5 * (p + 1);
            const double fihip = std::floor(hip);
            const long i = static_cast<long>(std::floor(std::sqrt(hip - std::sqrt(fihip)))) + 1;
            const long jj = p + 1 - 2 * i * (i - 1);
            z = 1.0 - static_cast<double>(i) * i / (3.0 * n * n);
            phi = (jj - 0.5) * kPi / (2.0 * i);
        } else if (p < npix - ncap) { // equatorial belt
            const long ip = p - ncap;
            const long i = ip / (4 * n) + n;
            const long jj = ip % (4 * n) + 1;
            const double fodd = ((i + n) & 1) ? 1.0 : 0.5;
            z = (2.0 * n - i) * 2.0 / (3.0 * n);
            phi = (jj - fodd) * kPi / (2.0 * n);
        } else { // south polar cap
            const long ip = npix - p;
            const double hip = 0.5 * ip;
            const double fihip = std::floor(hip);
            const long i = static_cast<long>(std::floor(std::sqrt(hip - std::sqrt(fihip)))) + 1;
            const long jj = 4 * i + 1 - (ip - 2 * i * (i - 1));
            z = -1.0 + static_cast<double>(i) * i / (3.0 * n * n);
            phi = (jj - 0.5) * kPi / (2.0 * i);
        }
        out.emplace_back(std::acos(std::clamp(z, -1.0, 1.0)), phi);
    }
    return out;
}

std::vector<SphDir> fibonacci_points(int n) {
    if (n < 1) throw std::invalid_argument("fibonacci_points: n < 1");
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<SphDir> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double phi = kTwoPi * std::fmod(i / golden, 1.0);
        out.emplace_back(std::acos(std::clamp(z, -1.0, 1.0)), phi);
    }
    return out;
}

CubatureBand make_band_points(int j, CubatureScheme scheme, double B) {
    if (j < 1) throw std::invalid_argument("make_band_points: j < 1");
    if (B <= 1.0) throw std::invalid_argument("make_band_points: B <= 1");
    CubatureBand band;
    band.j = j;
    if (scheme == CubatureScheme::PaperMatching) {
        const int nside = 1 << (j - 1);
        band.points = healpix_ring_centers(nside);
        band.weights.assign(band.points.size(), kFourPi / static_cast<double>(band.points.size()));
    } else {
        const int top = static_cast<int>(std::floor(std::pow(B, j + 1)));
        QuadGrid grid = gauss_product_grid(top);
        band.points = std::move(grid.dirs);
        band.weights = std::move(grid.weights);
    }
    return band;
}

std::vector<std::pair<SphDir, double>> equirect_geometry(int H, int W) {
    if (H < 2 || W < 4) throw std::invalid_argument("equirect_geometry: need H >= 2, W >= 4");
    std::vector<std::pair<SphDir, double>> out;
    out.reserve(static_cast<std::size_t>(H) * W);
    const double dphi = kTwoPi / W;
    for (int r = 0; r < H; ++r) {
        const double theta = (r + 0.5) * kPi / H;
        // Exact solid angle of the pixel row band; equals
        // sin(theta) * (pi/H) * (2*pi/W) up to O(1/H^2) and sums to 4*pi.
        const double w = (std::cos(r * kPi / H) - std::cos((r + 1) * kPi / H)) * dphi;
        for (int c = 0; c < W; ++c)
            out.emplace_back(SphDir(theta, (c + 0.5) * dphi), w);
    }
    return out;
}

} // namespace needletkit
