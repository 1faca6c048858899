#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace needletkit {

/// H x W x 3 linear-radiance panorama (equirectangular). Values are
/// nonnegative finite HDR samples; channel planes are row-major.
struct EquirectMap {
    int height = 0;
    int width = 0;
    std::array<std::vector<double>, 3> data;

    EquirectMap() = default;
    EquirectMap(int H, int W) : height(H), width(W) {
        if (H < 2 || W < 4) throw std::invalid_argument("EquirectMap: degenerate dimensions");
        for (auto& ch : data) ch.assign(static_cast<std::size_t>(H) * W, 0.0);
    }

    double& at(int ch, int r, int c) { return data[ch][static_cast<std::size_t>(r) * width + c]; }
    double at(int ch, int r, int c) const { return data[ch][static_cast<std::size_t>(r) * width + c]; }
    std::size_t pixels() const { return static_cast<std::size_t>(height) * width; }

    void validate() const {
        for (const auto& ch : data) {
            if (ch.size() != pixels()) throw std::invalid_argument("EquirectMap: channel size mismatch");
            for (double v : ch) {
                if (!std::isfinite(v)) throw std::invalid_argument("EquirectMap: non-finite sample");
                if (v < 0.0) throw std::invalid_argument("EquirectMap: negative radiance");
            }
        }
    }
};

/// Shift the panorama by whole pixel columns (rotation about the polar axis).
EquirectMap rotate_columns(const EquirectMap& m, int columns);

} // namespace needletkit
