#pragma once

#include <Eigen/Core>

#include "needletkit/transport.hpp"

namespace nktest {

/// Independent convex solver for the regularized UOT objective, used as a
/// reference for the Sinkhorn implementation. Mirror descent on the plan
/// with backtracking line search; no Sinkhorn scaling structure is used.
Eigen::MatrixXd uot_oracle_plan(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                const Eigen::MatrixXd& C, const needletkit::TransportConfig& cfg,
                                int max_iter = 200000);

double uot_oracle_value(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::MatrixXd& C,
                        const needletkit::TransportConfig& cfg);

} // namespace nktest
