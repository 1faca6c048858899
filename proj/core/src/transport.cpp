#include "needletkit/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "needletkit/errors.hpp"
#include "needletkit/grids.hpp"
#include "needletkit/parallel.hpp"

namespace needletkit {

namespace {

constexpr double kMassFloor = 1e-30;

// Row-wise log-sum-exp of (shift_j - C_ij) / gamma.
Eigen::VectorXd lse_rows(const Eigen::MatrixXd& C, const Eigen::VectorXd& shift, double gamma) {
    Eigen::ArrayXXd M = ((-C).rowwise() + shift.transpose()).array() / gamma;
    Eigen::ArrayXd rmax = M.rowwise().maxCoeff();
    return (rmax + (M.colwise() - rmax).exp().rowwise().sum().log()).matrix();
}

double kl_div(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double yi = std::max(y[i], kMassFloor);
        if (x[i] > 0.0) s += x[i] * std::log(x[i] / yi) - x[i] + yi;
        else s += yi;
    }
    return s;
}

} // namespace

void TransportConfig::validate() const {
    if (!(tau > 0.0) || !(gamma > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("TransportConfig: tau, gamma, tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("TransportConfig: max_iter < 1");
    if (aux_fraction < 0.0 || aux_fraction >= 1.0)
        throw std::invalid_argument("TransportConfig: aux_fraction must lie in [0, 1)");
}

Eigen::MatrixXd cost_matrix(std::span<const SphDir> points_a, std::span<const SphDir> points_b) {
    if (points_a.empty() || points_b.empty()) throw std::invalid_argument("cost_matrix: empty point list");
    Eigen::MatrixXd C(points_a.size(), points_b.size());
    std::vector<Vec3> ub;
    ub.reserve(points_b.size());
    for (const auto& p : points_b) ub.push_back(p.unit());
    for (std::size_t i = 0; i < points_a.size(); ++i) {
        const Vec3 ua = points_a[i].unit();
        for (std::size_t j = 0; j < points_b.size(); ++j)
            C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::acos(std::clamp(ua.dot(ub[j]), -1.0, 1.0));
    }
    return C;
}

double uot_objective(const Eigen::MatrixXd& plan, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                     const Eigen::MatrixXd& C, const TransportConfig& cfg) {
    double ent = 0.0;
    for (Eigen::Index i = 0; i < plan.size(); ++i) {
        const double p = plan.data()[i];
        if (p > 0.0) ent += p * (std::log(p) - 1.0);
    }
    const Eigen::VectorXd ra = plan.rowwise().sum();
    const Eigen::VectorXd rb = plan.colwise().sum();
    return (C.array() * plan.array()).sum() + cfg.tau * (kl_div(ra, a) + kl_div(rb, b)) + cfg.gamma * ent;
}

TransportResult sinkhorn_uot(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                             const Eigen::MatrixXd& C, const TransportConfig& cfg) {
    cfg.validate();
    if (C.rows() != a.size() || C.cols() != b.size())
        throw std::invalid_argument("sinkhorn_uot: cost matrix shape mismatch");
    if (!C.allFinite() || !a.allFinite() || !b.allFinite())
        throw NumericError("sinkhorn_uot: non-finite input");

    const Eigen::VectorXd av = a.cwiseMax(kMassFloor);
    const Eigen::VectorXd bv = b.cwiseMax(kMassFloor);
    const Eigen::VectorXd loga = av.array().log().matrix();
    const Eigen::VectorXd logb = bv.array().log().matrix();
    const double rate = cfg.tau / (cfg.tau + cfg.gamma);

    TransportResult res;
    Eigen::VectorXd f = Eigen::VectorXd::Zero(a.size());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(b.size());
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const Eigen::VectorXd fnew = rate * cfg.gamma * (loga - lse_rows(C, g, cfg.gamma));
        const Eigen::VectorXd gnew = rate * cfg.gamma * (logb - lse_rows(C.transpose(), fnew, cfg.gamma));
        if (!fnew.allFinite() || !gnew.allFinite())
            throw NumericError("sinkhorn_uot: NaN/Inf in dual update at iteration " + std::to_string(it));
        const double delta = std::max((fnew - f).cwiseAbs().maxCoeff(), (gnew - g).cwiseAbs().maxCoeff());
        f = fnew;
        g = gnew;
        res.iterations = it;
        if (delta < cfg.tol) {
            res.converged = true;
            break;
        }
    }

    res.plan = ((((-C).colwise() + f).rowwise() + g.transpose()) / cfg.gamma).array().exp().matrix();
    if (!res.plan.allFinite()) throw NumericError("sinkhorn_uot: non-finite transport plan");
    res.dual_a = std::move(f);
    res.dual_b = std::move(g);
    res.marginal_residual = (res.plan.rowwise().sum() - av).cwiseAbs().sum() +
                            (res.plan.colwise().sum().transpose() - bv).cwiseAbs().sum();
    res.objective = uot_objective(res.plan, av, bv, C, cfg);
    return res;
}

StlResult stl(const NeedletCoeffs& pred, const NeedletCoeffs& gt, const NeedletFrame& frame,
              TransportConfig cfg) {
    cfg.validate();
    if (!pred.matches(frame) || !gt.matches(frame))
        throw std::invalid_argument("stl: coefficients do not match the frame");

    StlResult out;
    out.grad = NeedletCoeffs::zeros_like(frame);

    struct Job {
        int jb;
        int ch;
    };
    std::vector<Job> jobs;
    for (std::size_t jb = 0; jb < frame.bands.size(); ++jb)
        for (int ch = 0; ch < 3; ++ch) jobs.push_back({static_cast<int>(jb), ch});

    std::vector<Eigen::MatrixXd> base_cost;
    for (const auto& band : frame.bands) base_cost.push_back(cost_matrix(band.points, band.points));

    std::vector<double> losses(jobs.size(), 0.0);
    parallel_for(jobs.size(), [&](std::size_t t) {
        const auto [jb, ch] = jobs[t];
        const CubatureBand& band = frame.bands[jb];
        const Eigen::Index n = static_cast<Eigen::Index>(band.size());
        const Eigen::VectorXd& bp = pred.bands[jb][ch];
        const Eigen::VectorXd& bg = gt.bands[jb][ch];
        if (bp.cwiseAbs().maxCoeff() > 700.0 || bg.cwiseAbs().maxCoeff() > 700.0)
            throw NumericError("stl: coefficient magnitude overflows exp preprocessing");

        const double aux_mass = cfg.aux_mass > 0.0 ? cfg.aux_mass : 1.0 / static_cast<double>(n);
        const Eigen::Index n_aux = static_cast<Eigen::Index>(std::llround(cfg.aux_fraction * static_cast<double>(n)));

        // Auxiliary slots: the lowest-|beta| predicted slots, deterministically.
        std::vector<Eigen::Index> order(n);
        for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
            const double ax = std::abs(bp[x]), ay = std::abs(bp[y]);
            return ax != ay ? ax < ay : x < y;
        });
        std::vector<bool> is_aux(n, false);
        for (Eigen::Index i = 0; i < n_aux; ++i) is_aux[order[i]] = true;

        Eigen::VectorXd a = bp.array().exp().matrix();
        const Eigen::VectorXd b = bg.array().exp().matrix();
        Eigen::MatrixXd C = base_cost[jb];
        for (Eigen::Index i = 0; i < n; ++i) {
            if (is_aux[i]) {
                a[i] = aux_mass;
                C.row(i).setZero();
            }
        }

        const TransportResult res = sinkhorn_uot(a, b, C, cfg);
        losses[t] = res.objective;
        // Envelope theorem on the source-marginal KL term, then chain rule
        // through the exp preprocessing. Auxiliary slots carry fixed mass.
        for (Eigen::Index i = 0; i < n; ++i) {
            if (is_aux[i]) continue;
            out.grad.bands[jb][ch][i] = cfg.tau * (1.0 - std::exp(-res.dual_a[i] / cfg.tau)) * a[i];
        }
    });
    for (double l : losses) out.loss += l;
    return out;
}

StdReport std_metric_report(const EquirectMap& map_a, const EquirectMap& map_b, int n_points,
                            TransportConfig cfg) {
    cfg.validate();
    if (n_points < 12) throw std::invalid_argument("std_metric: n_points must be >= 12");
    map_a.validate();
    map_b.validate();

    const auto total = [](const EquirectMap& m) {
        double s = 0.0;
        for (const auto& ch : m.data)
            for (double v : ch) s += v;
        return s;
    };
    if (total(map_a) <= 0.0 || total(map_b) <= 0.0)
        throw FormatError("std_metric: all-zero map has no transportable mass");

    const std::vector<SphDir> points = fibonacci_points(n_points);
    std::vector<Vec3> units;
    units.reserve(points.size());
    for (const auto& p : points) units.push_back(p.unit());

    // Solid-angle-weighted pooling of pixels onto the nearest point.
    const auto pool = [&](const EquirectMap& m) {
        std::array<Eigen::VectorXd, 3> mass;
        for (auto& v : mass) v = Eigen::VectorXd::Zero(n_points);
        const auto geom = equirect_geometry(m.height, m.width);
        for (std::size_t i = 0; i < geom.size(); ++i) {
            const Vec3 u = geom[i].first.unit();
            int best = 0;
            double bestdot = -2.0;
            for (int p = 0; p < n_points; ++p) {
                const double d = u.dot(units[p]);
                if (d > bestdot) {
                    bestdot = d;
                    best = p;
                }
            }
            for (int ch = 0; ch < 3; ++ch) mass[ch][best] += m.data[ch][i] * geom[i].second;
        }
        return mass;
    };

    const auto mass_a = pool(map_a);
    const auto mass_b = pool(map_b);
    const Eigen::MatrixXd C = cost_matrix(points, points);

    StdReport report;
    report.n_points = n_points;
    cfg.aux_fraction = 0.0; // the metric discards auxiliary points
    parallel_for(3, [&](std::size_t ch) {
        const TransportResult res = sinkhorn_uot(mass_a[ch], mass_b[ch], C, cfg);
        report.per_channel[ch] = res.objective;
    });
    for (double v : report.per_channel) report.total += v;
    return report;
}

double std_metric(const EquirectMap& map_a, const EquirectMap& map_b, int n_points,
                  const TransportConfig& cfg) {
    return std_metric_report(map_a, map_b, n_points, cfg).total;
}

} // namespace needletkit
