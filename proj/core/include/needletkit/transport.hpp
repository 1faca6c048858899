#pragma once

#include <array>
#include <span>

#include <Eigen/Core>

#include "needletkit/image.hpp"
#include "needletkit/needlet.hpp"
#include "needletkit/sphdir.hpp"

namespace needletkit {

struct TransportConfig {
    double tau = 10.0;         // marginal KL relaxation weight
    double gamma = 0.05;       // entropic regularization weight
    int max_iter = 2000;
    double tol = 1e-9;         // sup-norm change of the dual potentials
    double aux_fraction = 0.66; // fraction of source slots made auxiliary (stl only)
    double aux_mass = -1.0;    // < 0 means 1/N per band

    void validate() const;
};

struct TransportResult {
    Eigen::MatrixXd plan;      // n_a x n_b, nonnegative
    Eigen::VectorXd dual_a;    // source potential f
    Eigen::VectorXd dual_b;    // target potential g
    double objective = 0.0;    // value of the regularized UOT minimand at plan
    double marginal_residual = 0.0; // L1 gap between plan marginals and (a, b)
    int iterations = 0;
    bool converged = false;
};

/// C_ij = geodesic distance between a_i and b_j, entries in [0, pi].
Eigen::MatrixXd cost_matrix(std::span<const SphDir> points_a, std::span<const SphDir> points_b);

/// Log-domain Sinkhorn for entropic unbalanced OT:
///   min_P <C,P> + tau KL(P1||a) + tau KL(P^T1||b) + gamma sum P(log P - 1).
/// Masses are floored at 1e-30. Non-convergence is reported via the flag;
/// NaN/Inf mid-iteration throws NumericError.
TransportResult sinkhorn_uot(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                             const Eigen::MatrixXd& C, const TransportConfig& cfg);

/// Evaluate the regularized UOT minimand at an arbitrary plan.
double uot_objective(const Eigen::MatrixXd& plan, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                     const Eigen::MatrixXd& C, const TransportConfig& cfg);

struct StlResult {
    double loss = 0.0;
    NeedletCoeffs grad; // w.r.t. the predicted (pre-exponent) coefficients
};

/// Spherical transport loss: per band and channel, coefficients are mapped
/// through exp, the lowest-|beta| predicted slots become auxiliary points
/// (fixed small mass, zero cost), and the UOT objectives are summed.
StlResult stl(const NeedletCoeffs& pred, const NeedletCoeffs& gt, const NeedletFrame& frame,
              TransportConfig cfg);

struct StdReport {
    double total = 0.0;
    std::array<double, 3> per_channel{0.0, 0.0, 0.0};
    int n_points = 0;
};

/// Spherical transport distance between two panoramas: solid-angle pooling
/// onto n_points quasi-uniform directions, then per-channel UOT without
/// auxiliary points, summed over channels.
StdReport std_metric_report(const EquirectMap& map_a, const EquirectMap& map_b, int n_points,
                            TransportConfig cfg);
double std_metric(const EquirectMap& map_a, const EquirectMap& map_b, int n_points,
                  const TransportConfig& cfg);

} // namespace needletkit
