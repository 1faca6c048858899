#include "needletkit/fit.hpp"

#include <chrono>
#include <stdexcept>
#include <string>

#include "needletkit/errors.hpp"

namespace needletkit {

FitLoss parse_fit_loss(std::string_view name) {
    if (name == "l2") return FitLoss::L2;
    if (name == "stl") return FitLoss::Stl;
    if (name == "l2+stl") return FitLoss::L2Stl;
    throw std::invalid_argument("unsupported fit loss: " + std::string(name));
}

FitReport fit_coeffs(const EquirectMap& target, const NeedletFrame& frame, const FitOptions& opts,
                     NeedletCoeffs& fitted) {
    if (opts.iters < 1) throw std::invalid_argument("fit_coeffs: iters must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    const NeedletCoeffs gt = analyze(target, frame);
    NeedletCoeffs pred = NeedletCoeffs::zeros_like(frame);
    pred.dc = gt.dc;

    const bool use_l2 = opts.loss != FitLoss::Stl;
    const bool use_stl = opts.loss != FitLoss::L2;

    FitReport report;
    report.trace.reserve(opts.iters);
    double initial_total = 0.0;
    for (int it = 0; it < opts.iters; ++it) {
        FitStep step;
        NeedletCoeffs grad = NeedletCoeffs::zeros_like(frame);
        for (std::size_t jb = 0; jb < frame.bands.size(); ++jb) {
            for (int ch = 0; ch < 3; ++ch) {
                const Eigen::VectorXd diff = pred.bands[jb][ch] - gt.bands[jb][ch];
                step.l2 += diff.squaredNorm();
                if (use_l2) grad.bands[jb][ch] += 2.0 * diff;
            }
        }
        const StlResult st = stl(pred, gt, frame, opts.transport);
        step.stl = st.loss;
        if (use_stl)
            for (std::size_t jb = 0; jb < frame.bands.size(); ++jb)
                for (int ch = 0; ch < 3; ++ch) grad.bands[jb][ch] += st.grad.bands[jb][ch];

        step.total = (use_l2 ? step.l2 : 0.0) + (use_stl ? step.stl : 0.0);
        report.trace.push_back(step);
        if (it == 0) initial_total = std::abs(step.total);
        if (std::abs(step.total) > 1e3 * std::max(initial_total, 1e-12))
            throw NumericError("fit_coeffs: diverged at iteration " + std::to_string(it) +
                               " (loss " + std::to_string(step.total) + ")");

        for (std::size_t jb = 0; jb < frame.bands.size(); ++jb)
            for (int ch = 0; ch < 3; ++ch) pred.bands[jb][ch] -= opts.lr * grad.bands[jb][ch];
    }

    fitted = pred;
    EquirectMap recon = synthesize(pred, frame, target.height, target.width);
    for (auto& ch : recon.data)
        for (double& v : ch) v = std::max(v, 0.0);
    report.final_std = std_metric(recon, target, opts.std_points, opts.transport);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace needletkit
