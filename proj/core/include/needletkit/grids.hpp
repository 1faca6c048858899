#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "needletkit/sphdir.hpp"

namespace needletkit {

enum class CubatureScheme {
    PaperMatching, // hierarchical equal-area points, 12*4^(j-1) per band
    Exact          // Gauss-Legendre x uniform-longitude product grid
};

CubatureScheme parse_scheme(std::string_view name);
std::string_view scheme_name(CubatureScheme scheme);

/// Cubature nodes and weights anchoring one needlet frequency band.
/// Weights are in steradian and sum to 4*pi.
struct CubatureBand {
    int j = 0;
    std::vector<SphDir> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

/// A spherical quadrature grid that integrates products of spherical
/// harmonics exactly up to degree lmax_exact on each factor.
struct QuadGrid {
    std::vector<SphDir> dirs;
    std::vector<double> weights;
    int lmax_exact = 0;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product grid (Gauss-Legendre in cos(theta), uniform in phi) exact for
/// Y_lm * Y_l'm' with l, l' <= lmax_exact.
QuadGrid gauss_product_grid(int lmax_exact);

/// HEALPix ring-scheme pixel centers for the given nside (power of two).
std::vector<SphDir> healpix_ring_centers(int nside);

/// Quasi-uniform Fibonacci-lattice point set of arbitrary size n >= 1.
std::vector<SphDir> fibonacci_points(int n);

/// Cubature for needlet band j. The paper_matching scheme yields
/// 12*4^(j-1) equal-weight points; the exact scheme yields a product grid
/// resolving the band's top degree floor(B^(j+1)).
CubatureBand make_band_points(int j, CubatureScheme scheme, double B = 2.0);

/// Pixel-center directions and solid-angle weights of an H x W
/// equirectangular grid, row-major. Weights sum to 4*pi exactly.
std::vector<std::pair<SphDir, double>> equirect_geometry(int H, int W);

} // namespace needletkit
