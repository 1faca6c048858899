#include "needletkit/coeff_io.hpp"

#include <fstream>

#include <json.hpp>

#include "needletkit/errors.hpp"

namespace needletkit {

namespace {

using nlohmann::json;

std::vector<std::size_t> expected_band_sizes(double B, int j_max, CubatureScheme scheme) {
    std::vector<std::size_t> sizes;
    for (int j = 1; j <= j_max; ++j) sizes.push_back(make_band_points(j, scheme, B).size());
    return sizes;
}

} // namespace

void write_coeff_file(const CoeffFile& file, const std::string& path) {
    json doc;
    doc["version"] = file.version;
    doc["B"] = file.B;
    doc["j_max"] = file.j_max;
    doc["scheme"] = std::string(scheme_name(file.scheme));
    doc["dc"] = {file.coeffs.dc[0], file.coeffs.dc[1], file.coeffs.dc[2]};
    doc["provenance"] = file.provenance;

    json band_sizes = json::array();
    json bands = json::array();
    for (std::size_t jb = 0; jb < file.coeffs.bands.size(); ++jb) {
        const auto& band = file.coeffs.bands[jb];
        band_sizes.push_back(band[0].size());
        json entry;
        entry["j"] = static_cast<int>(jb) + 1;
        json chans = json::array();
        for (int ch = 0; ch < 3; ++ch) {
            json vals = json::array();
            for (Eigen::Index i = 0; i < band[ch].size(); ++i) vals.push_back(band[ch][i]);
            chans.push_back(std::move(vals));
        }
        entry["coeffs"] = std::move(chans);
        bands.push_back(std::move(entry));
    }
    doc["band_sizes"] = std::move(band_sizes);
    doc["bands"] = std::move(bands);

    std::ofstream out(path);
    if (!out) throw FormatError("coeff file: cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw FormatError("coeff file: write failed for " + path);
}

CoeffFile read_coeff_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("coeff file: cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw FormatError(std::string("coeff file: invalid JSON: ") + e.what());
    }

    CoeffFile file;
    try {
        file.version = doc.at("version").get<int>();
        if (file.version != 1)
            throw FormatError("coeff file: unrecognized schema version " + std::to_string(file.version));
        file.B = doc.at("B").get<double>();
        file.j_max = doc.at("j_max").get<int>();
        file.scheme = parse_scheme(doc.at("scheme").get<std::string>());
        file.provenance = doc.value("provenance", std::string());

        const auto& dc = doc.at("dc");
        if (dc.size() != 3) throw FormatError("coeff file: dc must have 3 channels");
        for (int ch = 0; ch < 3; ++ch) file.coeffs.dc[ch] = dc[ch].get<double>();

        const auto sizes = expected_band_sizes(file.B, file.j_max, file.scheme);
        const auto& bands = doc.at("bands");
        if (bands.size() != sizes.size())
            throw FormatError("coeff file: band count inconsistent with (B, j_max, scheme)");
        file.coeffs.bands.resize(sizes.size());
        for (std::size_t jb = 0; jb < sizes.size(); ++jb) {
            const auto& entry = bands[jb];
            if (entry.at("j").get<int>() != static_cast<int>(jb) + 1)
                throw FormatError("coeff file: bands out of order");
            const auto& chans = entry.at("coeffs");
            if (chans.size() != 3) throw FormatError("coeff file: each band needs 3 channels");
            for (int ch = 0; ch < 3; ++ch) {
                const auto& vals = chans[ch];
                if (vals.size() != sizes[jb])
                    throw FormatError("coeff file: band " + std::to_string(jb + 1) +
                                      " size inconsistent with (B, j_max, scheme)");
                Eigen::VectorXd v(static_cast<Eigen::Index>(sizes[jb]));
                for (std::size_t i = 0; i < sizes[jb]; ++i) {
                    v[static_cast<Eigen::Index>(i)] = vals[i].get<double>();
                    if (!std::isfinite(v[static_cast<Eigen::Index>(i)]))
                        throw FormatError("coeff file: non-finite coefficient");
                }
                file.coeffs.bands[jb][ch] = std::move(v);
            }
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("coeff file: schema mismatch: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("coeff file: ") + e.what());
    }
    return file;
}

} // namespace needletkit
