#pragma once

#include <cstdint>
#include <vector>

#include "needletkit/image.hpp"
#include "needletkit/needlet.hpp"
#include "needletkit/transport.hpp"

namespace needletkit {

enum class FitLoss { L2, Stl, L2Stl };

FitLoss parse_fit_loss(std::string_view name);

struct FitOptions {
    FitLoss loss = FitLoss::L2Stl;
    int iters = 500;
    double lr = 0.05;
    TransportConfig transport{};
    int std_points = 192;
    std::uint64_t seed = 0; // reserved for stochastic variants; the descent is deterministic
};

struct FitStep {
    double l2 = 0.0;
    double stl = 0.0;
    double total = 0.0;
};

struct FitReport {
    std::vector<FitStep> trace;
    double final_std = 0.0;   // STD between reconstruction and target
    double wall_seconds = 0.0;
};

/// Gradient descent on needlet coefficients against analyze(target),
/// starting from the DC-only representation. Both loss terms are traced
/// every step even when only one drives the updates. Divergence (loss
/// above 1e3 x initial) aborts with NumericError.
FitReport fit_coeffs(const EquirectMap& target, const NeedletFrame& frame, const FitOptions& opts,
                     NeedletCoeffs& fitted);

} // namespace needletkit
