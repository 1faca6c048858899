#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace needletkit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// A direction on the unit sphere, stored as colatitude/longitude.
/// theta is validated into [0, pi]; phi is wrapped into [0, 2*pi).
class SphDir {
public:
    SphDir(double theta, double phi) {
        if (!std::isfinite(theta) || !std::isfinite(phi))
            throw std::invalid_argument("SphDir: non-finite angles");
        // Absorb tiny numerical overshoot at the poles.
        if (theta < 0.0 && theta > -1e-12) theta = 0.0;
        if (theta > kPi && theta < kPi + 1e-12) theta = kPi;
        if (theta < 0.0 || theta > kPi)
            throw std::invalid_argument("SphDir: theta outside [0, pi]");
        phi = std::fmod(phi, kTwoPi);
        if (phi < 0.0) phi += kTwoPi;
        if (phi >= kTwoPi) phi = 0.0;
        theta_ = theta;
        phi_ = phi;
    }

    static SphDir from_unit(const Vec3& v) {
        const double n = v.norm();
        if (n < 1e-300) throw std::invalid_argument("SphDir: zero vector");
        const double z = std::clamp(v.z / n, -1.0, 1.0);
        return SphDir(std::acos(z), std::atan2(v.y, v.x));
    }

    double theta() const { return theta_; }
    double phi() const { return phi_; }

    Vec3 unit() const {
        const double st = std::sin(theta_);
        return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
    }

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// Great-circle distance in radians, in [0, pi].
inline double geodesic_distance(const SphDir& u, const SphDir& v) {
    const double c = std::clamp(u.unit().dot(v.unit()), -1.0, 1.0);
    return std::acos(c);
}

} // namespace needletkit
