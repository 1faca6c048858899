#include <doctest.h>

#include "helpers.hpp"

using namespace needletkit;

TEST_CASE("eval_ylm canonical values") {
    auto gen = nktest::rng(3);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(eval_ylm(0, 0, nktest::random_dir(gen)) == doctest::Approx(1.0 / std::sqrt(kFourPi)));
    CHECK(eval_ylm(1, 0, SphDir(0.0, 0.0)) == doctest::Approx(std::sqrt(3.0 / kFourPi)));
    CHECK_THROWS_AS(eval_ylm(2, 3, SphDir(1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("orthonormality under the exact grid") {
    const int lmax = 8;
    const QuadGrid grid = gauss_product_grid(lmax);
    const int n = (lmax + 1) * (lmax + 1);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < grid.dirs.size(); ++i) {
        const Eigen::VectorXd y = eval_ylm_all(lmax, grid.dirs[i]);
        gram += grid.weights[i] * y * y.transpose();
    }
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(gram(SHCoeffs::index(2, 1), SHCoeffs::index(2, 1)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("legendre recurrence stays stable up to l = 64") {
    auto gen = nktest::rng(5);
    const QuadGrid grid = gauss_product_grid(64);
    // Spot-check a handful of high-degree diagonal Gram entries.
    for (int l : {32, 50, 64}) {
        double norm = 0.0;
        for (std::size_t i = 0; i < grid.dirs.size(); ++i) {
            const double y = eval_ylm(l, l / 2, grid.dirs[i]);
            norm += grid.weights[i] * y * y;
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    }
    (void)gen;
}

TEST_CASE("sht_forward on a constant map") {
    const QuadGrid grid = gauss_product_grid(6);
    std::vector<double> vals(grid.dirs.size(), 2.5);
    SHCoeffs sh = sht_forward(grid.dirs, grid.weights, {vals, vals, vals}, 6);
    CHECK(sh.chan[0][0] == doctest::Approx(2.5 * std::sqrt(kFourPi)));
    for (int i = 1; i < sh.count(); ++i) CHECK(std::abs(sh.chan[0][i]) < 1e-6 * std::abs(sh.chan[0][0]));
}

TEST_CASE("sht_forward recovers a pure mode") {
    const int lmax = 6;
    const QuadGrid grid = gauss_product_grid(lmax);
    std::vector<double> vals(grid.dirs.size());
    for (std::size_t i = 0; i < grid.dirs.size(); ++i) vals[i] = eval_ylm(3, 2, grid.dirs[i]);
    const SHCoeffs sh = sht_forward(grid.dirs, grid.weights, {vals, vals, vals}, lmax);
    for (int i = 0; i < sh.count(); ++i) {
        const double want = (i == SHCoeffs::index(3, 2)) ? 1.0 : 0.0;
        CHECK(std::abs(sh.chan[1][i] - want) < 1e-9);
    }
}

TEST_CASE("forward-inverse roundtrip and Parseval on band-limited input") {
    const int lmax = 8;
    const QuadGrid grid = gauss_product_grid(lmax);
    auto gen = nktest::rng(17);
    const SHCoeffs sh = nktest::random_bandlimited(lmax, gen);

    const auto vals = sht_inverse(sh, grid.dirs);
    const SHCoeffs back = sht_forward(grid.dirs, grid.weights,
                                      {std::span<const double>(vals[0].data(), vals[0].size()),
                                       std::span<const double>(vals[1].data(), vals[1].size()),
                                       std::span<const double>(vals[2].data(), vals[2].size())},
                                      lmax);
    for (int ch = 0; ch < 3; ++ch) {
        CHECK(nktest::rel_l2(back.chan[ch], sh.chan[ch]) < 1e-8);
        // Parseval: sample energy equals coefficient energy.
        double energy = 0.0;
        for (std::size_t i = 0; i < grid.dirs.size(); ++i)
            energy += vals[ch][static_cast<Eigen::Index>(i)] * vals[ch][static_cast<Eigen::Index>(i)] *
                      grid.weights[i];
        CHECK(energy == doctest::Approx(sh.chan[ch].squaredNorm()).epsilon(1e-8));
    }
}

TEST_CASE("sht_inverse trivials") {
    std::vector<SphDir> dirs = fibonacci_points(30);
    SHCoeffs zero(4);
    auto vals = sht_inverse(zero, dirs);
    for (int ch = 0; ch < 3; ++ch) CHECK(vals[ch].cwiseAbs().maxCoeff() == 0.0);

    SHCoeffs dc(4);
    for (int ch = 0; ch < 3; ++ch) dc.chan[ch][0] = std::sqrt(kFourPi);
    vals = sht_inverse(dc, dirs);
    for (int ch = 0; ch < 3; ++ch)
        for (Eigen::Index i = 0; i < vals[ch].size(); ++i)
            CHECK(vals[ch][i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sht_forward rejects an unresolvable lmax") {
    const QuadGrid grid = gauss_product_grid(2);
    std::vector<double> vals(grid.dirs.size(), 1.0);
    CHECK_THROWS_AS(sht_forward(grid.dirs, grid.weights, {vals, vals, vals}, 12), std::invalid_argument);
}
