// Command-line front end: panorama analysis/synthesis, sparsification,
// the spherical transport distance, and the coefficient-fit demo.
//
// Exit codes: 0 success, 2 usage error, 3 data/format error, 4 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "needletkit/needletkit.hpp"

namespace nk = needletkit;
using nlohmann::json;

namespace {

struct FrameArgs {
    double B = 2.0;
    int j_max = 3;
    std::string scheme = "paper_matching";

    nk::NeedletFrame build() const { return nk::NeedletFrame::build(B, j_max, nk::parse_scheme(scheme)); }
};

void add_frame_options(CLI::App* cmd, FrameArgs& args) {
    cmd->add_option("--B", args.B, "needlet bandwidth parameter (> 1)")->check(CLI::Range(1.0 + 1e-9, 64.0));
    cmd->add_option("--jmax", args.j_max, "top frequency band")->check(CLI::Range(1, 6));
    cmd->add_option("--scheme", args.scheme, "cubature scheme: paper_matching | exact")
        ->check(CLI::IsMember({"paper_matching", "exact"}));
}

int run_analyze(const std::string& input, const std::string& output, const FrameArgs& fargs,
                std::optional<double> sparsify_lambda) {
    const nk::EquirectMap map = nk::read_pfm(input);
    const nk::NeedletFrame frame = fargs.build();
    nk::NeedletCoeffs coeffs = nk::analyze(map, frame);

    std::string provenance = "analyze " + input;
    if (sparsify_lambda) {
        std::vector<nk::SparsePrior> priors;
        for (int j = 1; j <= frame.j_max; ++j) {
            nk::SparsePrior p = nk::estimate_prior(coeffs, j);
            p.lambda = *sparsify_lambda;
            priors.push_back(p);
        }
        coeffs = nk::soft_threshold(coeffs, priors, nk::high_frequency_bands(frame));
        provenance += " --sparsify lambda=" + std::to_string(*sparsify_lambda);
    }

    nk::CoeffFile file;
    file.B = fargs.B;
    file.j_max = fargs.j_max;
    file.scheme = nk::parse_scheme(fargs.scheme);
    file.coeffs = std::move(coeffs);
    file.provenance = provenance;
    nk::write_coeff_file(file, output);
    std::cout << "wrote " << output << " (" << file.coeffs.bands.size() << " bands, "
              << frame.band_coefficients() << " band coefficients per channel)\n";
    return 0;
}

int run_synthesize(const std::string& input, int H, int W, const std::string& output) {
    const nk::CoeffFile file = nk::read_coeff_file(input);
    const nk::NeedletFrame frame = file.frame();
    nk::EquirectMap map = nk::synthesize(file.coeffs, frame, H, W);

    std::size_t clamped = 0;
    for (auto& ch : map.data)
        for (double& v : ch)
            if (v < 0.0) {
                v = 0.0;
                ++clamped;
            }
    nk::write_pfm(map, output);
    std::cerr << "clamped " << clamped << " negative reconstruction values (of " << 3 * map.pixels()
              << ")\n";
    std::cout << "wrote " << output << "\n";
    return 0;
}

int run_sparsify(const std::string& input, const std::string& output, double lambda, bool hard) {
    nk::CoeffFile file = nk::read_coeff_file(input);
    const nk::NeedletFrame frame = file.frame();
    std::vector<nk::SparsePrior> priors;
    for (int j = 1; j <= frame.j_max; ++j) {
        nk::SparsePrior p = nk::estimate_prior(file.coeffs, j);
        p.lambda = lambda;
        priors.push_back(p);
    }
    const auto bands = nk::high_frequency_bands(frame);
    file.coeffs = hard ? nk::hard_threshold(file.coeffs, priors, bands)
                       : nk::soft_threshold(file.coeffs, priors, bands);
    file.provenance += std::string(hard ? " | hard" : " | soft") + "-threshold lambda=" + std::to_string(lambda);
    nk::write_coeff_file(file, output);
    std::cout << "wrote " << output << "\n";
    return 0;
}

int run_std(const std::string& path_a, const std::string& path_b, int points, double tau, double gamma,
            const std::string& report_path) {
    const nk::EquirectMap a = nk::read_pfm(path_a);
    const nk::EquirectMap b = nk::read_pfm(path_b);
    nk::TransportConfig cfg;
    cfg.tau = tau;
    cfg.gamma = gamma;
    cfg.aux_fraction = 0.0;
    const nk::StdReport rep = nk::std_metric_report(a, b, points, cfg);

    json doc;
    doc["std"] = rep.total;
    doc["per_channel"] = {rep.per_channel[0], rep.per_channel[1], rep.per_channel[2]};
    doc["n_points"] = rep.n_points;
    doc["tau"] = tau;
    doc["gamma"] = gamma;

    std::cout << "STD " << rep.total << "\n";
    if (report_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(report_path);
        if (!out) throw nk::FormatError("cannot open report path " + report_path);
        out << doc.dump(2) << "\n";
    }
    return 0;
}

int run_fit_demo(const std::string& target_path, const FrameArgs& fargs, const nk::FitOptions& opts,
                 const std::string& coeffs_out, const std::string& report_out) {
    const nk::EquirectMap target = nk::read_pfm(target_path);
    const nk::NeedletFrame frame = fargs.build();

    nk::NeedletCoeffs fitted;
    const nk::FitReport report = nk::fit_coeffs(target, frame, opts, fitted);

    std::cout << "iterations " << report.trace.size() << ", final l2 " << report.trace.back().l2
              << ", final stl " << report.trace.back().stl << ", final STD " << report.final_std
              << ", wall " << report.wall_seconds << " s\n";

    if (!coeffs_out.empty()) {
        nk::CoeffFile file;
        file.B = fargs.B;
        file.j_max = fargs.j_max;
        file.scheme = nk::parse_scheme(fargs.scheme);
        file.coeffs = fitted;
        file.provenance = "fit-demo " + target_path;
        nk::write_coeff_file(file, coeffs_out);
        std::cout << "wrote " << coeffs_out << "\n";
    }
    if (!report_out.empty()) {
        json doc;
        json trace = json::array();
        for (const auto& step : report.trace)
            trace.push_back({{"l2", step.l2}, {"stl", step.stl}, {"total", step.total}});
        doc["trace"] = std::move(trace);
        doc["final_std"] = report.final_std;
        doc["wall_seconds"] = report.wall_seconds;
        std::ofstream out(report_out);
        if (!out) throw nk::FormatError("cannot open report path " + report_out);
        out << doc.dump(2) << "\n";
        std::cout << "wrote " << report_out << "\n";
    }
    return 0;
}

int run_frame_info(const FrameArgs& fargs) {
    const nk::NeedletFrame frame = fargs.build();
    std::cout << "B " << frame.B << ", j_max " << frame.j_max << ", scheme " << fargs.scheme
              << ", lmax " << frame.lmax() << "\n";
    for (int j = 1; j <= frame.j_max; ++j) {
        const auto& band = frame.bands[j - 1];
        double wsum = 0.0;
        for (double w : band.weights) wsum += w;
        std::cout << "band j=" << j << ": degrees [" << frame.band_lmin(j) << ", " << frame.band_lmax(j)
                  << "], " << band.size() << " points, weight sum " << wsum << "\n";
    }
    std::cout << "band coefficients per channel: " << frame.band_coefficients() << " (+ dc)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical needlet toolkit for HDR panoramas"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "panorama -> needlet coefficient file");
    std::string an_in, an_out;
    FrameArgs an_frame;
    std::optional<double> an_sparsify;
    analyze->add_option("input", an_in, "input panorama (.pfm)")->required();
    analyze->add_option("output", an_out, "output coefficient file (.json)")->required();
    add_frame_options(analyze, an_frame);
    analyze->add_option("--sparsify", an_sparsify, "apply soft thresholding with this lambda to bands j >= 2");

    // synthesize
    auto* synth = app.add_subcommand("synthesize", "coefficient file -> panorama");
    std::string sy_in, sy_out;
    int sy_h = 64, sy_w = 128;
    synth->add_option("coeffs", sy_in, "input coefficient file (.json)")->required();
    synth->add_option("height", sy_h, "output rows")->required()->check(CLI::Range(2, 1 << 14));
    synth->add_option("width", sy_w, "output columns")->required()->check(CLI::Range(4, 1 << 15));
    synth->add_option("output", sy_out, "output panorama (.pfm)")->required();

    // sparsify
    auto* sparsify = app.add_subcommand("sparsify", "threshold a coefficient file");
    std::string sp_in, sp_out;
    double sp_lambda = 1.0;
    bool sp_hard = false;
    sparsify->add_option("input", sp_in)->required();
    sparsify->add_option("output", sp_out)->required();
    sparsify->add_option("--lambda", sp_lambda, "Laplace sparsity rate")->check(CLI::NonNegativeNumber);
    sparsify->add_flag("--hard", sp_hard, "hard thresholding (ablation) instead of soft");

    // std
    auto* stdcmd = app.add_subcommand("std", "spherical transport distance between two panoramas");
    std::string st_a, st_b, st_report;
    int st_points = 192;
    double st_tau = 10.0, st_gamma = 0.05;
    stdcmd->add_option("a", st_a)->required();
    stdcmd->add_option("b", st_b)->required();
    stdcmd->add_option("--points", st_points, "resampling point count")->check(CLI::Range(12, 1 << 16));
    stdcmd->add_option("--tau", st_tau)->check(CLI::PositiveNumber);
    stdcmd->add_option("--gamma", st_gamma)->check(CLI::PositiveNumber);
    stdcmd->add_option("--report", st_report, "write the JSON report here instead of stdout");

    // fit-demo
    auto* fit = app.add_subcommand("fit-demo", "gradient-descent coefficient fit against a target panorama");
    std::string fd_target, fd_coeffs, fd_report, fd_loss = "l2+stl";
    FrameArgs fd_frame;
    nk::FitOptions fd_opts;
    fit->add_option("target", fd_target, "target panorama (.pfm)")->required();
    add_frame_options(fit, fd_frame);
    fit->add_option("--loss", fd_loss, "l2 | stl | l2+stl")->check(CLI::IsMember({"l2", "stl", "l2+stl"}));
    fit->add_option("--iters", fd_opts.iters)->check(CLI::Range(1, 1 << 20));
    fit->add_option("--lr", fd_opts.lr, "learning rate")->check(CLI::NonNegativeNumber);
    fit->add_option("--tau", fd_opts.transport.tau)->check(CLI::PositiveNumber);
    fit->add_option("--gamma", fd_opts.transport.gamma)->check(CLI::PositiveNumber);
    fit->add_option("--points", fd_opts.std_points, "STD resampling points")->check(CLI::Range(12, 1 << 16));
    fit->add_option("--seed", fd_opts.seed, "seed (runs are bit-reproducible given the seed)");
    fit->add_option("--out", fd_coeffs, "write fitted coefficients here");
    fit->add_option("--report", fd_report, "write the JSON fit report here");

    // frame-info
    auto* info = app.add_subcommand("frame-info", "print band layout for a frame configuration");
    FrameArgs fi_frame;
    add_frame_options(info, fi_frame);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(an_in, an_out, an_frame, an_sparsify);
        if (synth->parsed()) return run_synthesize(sy_in, sy_h, sy_w, sy_out);
        if (sparsify->parsed()) return run_sparsify(sp_in, sp_out, sp_lambda, sp_hard);
        if (stdcmd->parsed()) return run_std(st_a, st_b, st_points, st_tau, st_gamma, st_report);
        if (fit->parsed()) {
            fd_opts.loss = nk::parse_fit_loss(fd_loss);
            return run_fit_demo(fd_target, fd_frame, fd_opts, fd_coeffs, fd_report);
        }
        if (info->parsed()) return run_frame_info(fi_frame);
    } catch (const nk::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const nk::FormatError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
