#include "needletkit/needlet.hpp"

#include <cmath>
#include <stdexcept>

#include "needletkit/errors.hpp"
#include "needletkit/parallel.hpp"

namespace needletkit {

namespace {

// C-infinity bump on (-1, 1).
double bump(double t) {
    if (t <= -1.0 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

// 5-point Gauss-Legendre on [a, b].
double gl5(double a, double b) {
    static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += ws[i] * bump(mid + half * xs[i]);
    return s * half;
}

} // namespace

NeedletWindow::NeedletWindow(double B) : B_(B) {
    if (!(B > 1.0)) throw std::invalid_argument("NeedletWindow: B must be > 1");
    samples_ = 4096;
    cum_.assign(samples_ + 1, 0.0);
    const double h = 2.0 / samples_;
    for (int i = 0; i < samples_; ++i)
        cum_[i + 1] = cum_[i] + gl5(-1.0 + i * h, -1.0 + (i + 1) * h);
    total_ = cum_[samples_];
}

double NeedletWindow::psi(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double h = 2.0 / samples_;
    const double pos = (u + 1.0) / h;
    int i = static_cast<int>(pos);
    if (i >= samples_) i = samples_ - 1;
    const double x0 = -1.0 + i * h;
    return (cum_[i] + gl5(x0, u)) / total_;
}

double NeedletWindow::phi(double t) const {
    if (t <= 1.0 / B_) return 1.0;
    if (t >= 1.0) return 0.0;
    return psi(1.0 - 2.0 * B_ * (t - 1.0 / B_) / (B_ - 1.0));
}

double NeedletWindow::operator()(double xi) const {
    if (xi <= 1.0 / B_ || xi >= B_) return 0.0;
    const double b2 = phi(xi / B_) - phi(xi);
    return b2 > 0.0 ? std::sqrt(b2) : 0.0;
}

double NeedletWindow::partition_error(int lmax) const {
    double worst = 0.0;
    for (int l = 1; l <= lmax; ++l) {
        double sum = 0.0;
        const int jtop = static_cast<int>(std::ceil(std::log(static_cast<double>(l)) / std::log(B_))) + 2;
        for (int j = 0; j <= jtop; ++j) {
            const double b = (*this)(l / std::pow(B_, j));
            sum += b * b;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

int NeedletFrame::lmax() const { return static_cast<int>(std::floor(std::pow(B, j_max + 1))); }
int NeedletFrame::band_lmin(int j) const { return static_cast<int>(std::ceil(std::pow(B, j - 1))); }
int NeedletFrame::band_lmax(int j) const { return static_cast<int>(std::floor(std::pow(B, j + 1))); }

std::size_t NeedletFrame::band_coefficients() const {
    std::size_t n = 0;
    for (const auto& b : bands) n += b.size();
    return n;
}

NeedletFrame NeedletFrame::build(double B, int j_max, CubatureScheme scheme) {
    if (j_max < 1) throw std::invalid_argument("NeedletFrame: j_max < 1");
    NeedletFrame frame;
    frame.window = std::make_shared<NeedletWindow>(B);
    frame.B = B;
    frame.j_max = j_max;
    frame.scheme = scheme;
    if (frame.lmax() > kMaxDegree)
        throw std::invalid_argument("NeedletFrame: floor(B^(j_max+1)) above supported lmax = 64");
    if (frame.window->partition_error(frame.lmax()) > 1e-7)
        throw NumericError("NeedletFrame: window partition of unity violated");

    const int L = frame.lmax();
    for (int j = 1; j <= j_max; ++j) {
        frame.bands.push_back(make_band_points(j, scheme, B));
        Eigen::VectorXd b = Eigen::VectorXd::Zero(L + 1);
        for (int l = frame.band_lmin(j); l <= std::min(L, frame.band_lmax(j)); ++l)
            b[l] = (*frame.window)(l / std::pow(B, j));
        frame.band_b.push_back(std::move(b));
    }
    return frame;
}

NeedletCoeffs NeedletCoeffs::zeros_like(const NeedletFrame& frame) {
    NeedletCoeffs c;
    c.bands.resize(frame.bands.size());
    for (std::size_t jb = 0; jb < frame.bands.size(); ++jb)
        for (int ch = 0; ch < 3; ++ch)
            c.bands[jb][ch] = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.bands[jb].size()));
    return c;
}

bool NeedletCoeffs::matches(const NeedletFrame& frame) const {
    if (bands.size() != frame.bands.size()) return false;
    for (std::size_t jb = 0; jb < bands.size(); ++jb)
        for (int ch = 0; ch < 3; ++ch)
            if (bands[jb][ch].size() != static_cast<Eigen::Index>(frame.bands[jb].size())) return false;
    return true;
}

double needlet_basis(const NeedletFrame& frame, int j, int k, const SphDir& x) {
    if (j < 1 || j > frame.j_max) throw std::out_of_range("needlet_basis: band index out of range");
    const CubatureBand& band = frame.bands[j - 1];
    if (k < 0 || static_cast<std::size_t>(k) >= band.size())
        throw std::out_of_range("needlet_basis: point index out of range");

    // Addition theorem: sum_m Y_lm(xi) Y_lm(x) = (2l+1)/(4 pi) P_l(xi . x).
    const double c = std::clamp(band.points[k].unit().dot(x.unit()), -1.0, 1.0);
    const int L = frame.band_lmax(j) <= frame.lmax() ? frame.band_lmax(j) : frame.lmax();
    std::vector<double> pl(L + 1);
    legendre_pl(L, c, pl);
    const Eigen::VectorXd& b = frame.band_b[j - 1];
    double s = 0.0;
    for (int l = frame.band_lmin(j); l <= L; ++l)
        s += b[l] * (2.0 * l + 1.0) / kFourPi * pl[l];
    return std::sqrt(band.weights[k]) * s;
}

NeedletCoeffs analyze(const SHCoeffs& sh, const NeedletFrame& frame) {
    NeedletCoeffs out = NeedletCoeffs::zeros_like(frame);
    for (int ch = 0; ch < 3; ++ch) out.dc[ch] = sh.chan[ch][0] / std::sqrt(kFourPi);

    for (int j = 1; j <= frame.j_max; ++j) {
        const CubatureBand& band = frame.bands[j - 1];
        const Eigen::VectorXd& b = frame.band_b[j - 1];
        const int L = std::min(sh.lmax, std::min(frame.band_lmax(j), frame.lmax()));
        auto& dst = out.bands[j - 1];
        parallel_for(band.size(), [&](std::size_t k) {
            const Eigen::VectorXd y = eval_ylm_all(L, band.points[k]);
            const double sqw = std::sqrt(band.weights[k]);
            for (int ch = 0; ch < 3; ++ch) {
                double beta = 0.0;
                for (int l = frame.band_lmin(j); l <= L; ++l) {
                    const int base = SHCoeffs::index(l, -l);
                    double inner = 0.0;
                    for (int idx = base; idx <= SHCoeffs::index(l, l); ++idx)
                        inner += sh.chan[ch][idx] * y[idx];
                    beta += b[l] * inner;
                }
                dst[ch][static_cast<Eigen::Index>(k)] = sqw * beta;
            }
        });
    }
    return out;
}

NeedletCoeffs analyze(const EquirectMap& map, const NeedletFrame& frame) {
    map.validate();
    const int lmax = frame.lmax();
    if (map.height < 2 * (lmax + 1) || map.width < 2 * lmax + 1)
        throw std::invalid_argument("analyze: map resolution too low for the frame's top degree " +
                                    std::to_string(lmax));
    const auto geom = equirect_geometry(map.height, map.width);
    std::vector<SphDir> dirs;
    std::vector<double> weights;
    dirs.reserve(geom.size());
    weights.reserve(geom.size());
    for (const auto& [d, w] : geom) {
        dirs.push_back(d);
        weights.push_back(w);
    }
    const SHCoeffs sh = sht_forward(dirs, weights,
                                    {std::span(map.data[0]), std::span(map.data[1]), std::span(map.data[2])},
                                    lmax);
    return analyze(sh, frame);
}

std::array<Eigen::VectorXd, 3> synthesize_at(const NeedletCoeffs& coeffs, const NeedletFrame& frame,
                                             std::span<const SphDir> dirs) {
    if (!coeffs.matches(frame)) throw std::invalid_argument("synthesize: coeffs/frame shape mismatch");

    std::vector<std::vector<Vec3>> units(frame.bands.size());
    for (std::size_t jb = 0; jb < frame.bands.size(); ++jb)
        for (const auto& p : frame.bands[jb].points) units[jb].push_back(p.unit());

    std::array<Eigen::VectorXd, 3> out;
    for (int ch = 0; ch < 3; ++ch)
        out[ch] = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dirs.size()), coeffs.dc[ch]);

    const int L = frame.lmax();
    parallel_for(dirs.size(), [&](std::size_t i) {
        const Vec3 x = dirs[i].unit();
        std::vector<double> pl(static_cast<std::size_t>(L) + 1);
        double acc[3] = {0.0, 0.0, 0.0};
        for (int j = 1; j <= frame.j_max; ++j) {
            const CubatureBand& band = frame.bands[j - 1];
            const Eigen::VectorXd& b = frame.band_b[j - 1];
            const int Lj = std::min(frame.band_lmax(j), L);
            const int l0 = frame.band_lmin(j);
            for (std::size_t k = 0; k < band.size(); ++k) {
                const double c = std::clamp(units[j - 1][k].dot(x), -1.0, 1.0);
                legendre_pl(Lj, c, pl);
                double s = 0.0;
                for (int l = l0; l <= Lj; ++l) s += b[l] * (2.0 * l + 1.0) * pl[l];
                s *= std::sqrt(band.weights[k]) / kFourPi;
                for (int ch = 0; ch < 3; ++ch)
                    acc[ch] += coeffs.bands[j - 1][ch][static_cast<Eigen::Index>(k)] * s;
            }
        }
        for (int ch = 0; ch < 3; ++ch) out[ch][static_cast<Eigen::Index>(i)] += acc[ch];
    });
    return out;
}

EquirectMap synthesize(const NeedletCoeffs& coeffs, const NeedletFrame& frame, int H, int W) {
    const auto geom = equirect_geometry(H, W);
    std::vector<SphDir> dirs;
    dirs.reserve(geom.size());
    for (const auto& [d, w] : geom) dirs.push_back(d);
    const auto vals = synthesize_at(coeffs, frame, dirs);
    EquirectMap map(H, W);
    for (int ch = 0; ch < 3; ++ch)
        for (std::size_t i = 0; i < dirs.size(); ++i) map.data[ch][i] = vals[ch][static_cast<Eigen::Index>(i)];
    return map;
}

} // namespace needletkit
