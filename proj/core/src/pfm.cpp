#include "needletkit/pfm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "needletkit/errors.hpp"

namespace needletkit {

namespace {

std::string next_token(std::istream& in) {
    std::string tok;
    if (!(in >> tok)) throw FormatError("PFM: truncated header");
    return tok;
}

float byteswap_float(float v) {
    uint32_t u;
    std::memcpy(&u, &v, 4);
    u = ((u & 0xFF000000u) >> 24) | ((u & 0x00FF0000u) >> 8) | ((u & 0x0000FF00u) << 8) |
        ((u & 0x000000FFu) << 24);
    std::memcpy(&v, &u, 4);
    return v;
}

constexpr bool host_is_little_endian() { return std::endian::native == std::endian::little; }

} // namespace

EquirectMap read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("PFM: cannot open " + path);

    const std::string magic = next_token(in);
    if (magic == "Pf") throw FormatError("PFM: grayscale 'Pf' files are not supported, expected color 'PF'");
    if (magic != "PF") throw FormatError("PFM: bad magic '" + magic + "', expected 'PF'");

    int width = 0, height = 0;
    double scale = 0.0;
    try {
        width = std::stoi(next_token(in));
        height = std::stoi(next_token(in));
        scale = std::stod(next_token(in));
    } catch (const std::logic_error&) {
        throw FormatError("PFM: malformed dimensions or scale token");
    }
    if (width < 4 || height < 2) throw FormatError("PFM: degenerate dimensions");
    if (scale == 0.0 || !std::isfinite(scale)) throw FormatError("PFM: invalid scale token");
    in.get(); // single whitespace byte separating header and payload

    const bool file_little = scale < 0.0;
    const std::size_t count = static_cast<std::size_t>(width) * height * 3;
    std::vector<float> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(float))
        throw FormatError("PFM: truncated pixel payload");

    EquirectMap map(height, width);
    for (int r = 0; r < height; ++r) {
        const int src_row = height - 1 - r; // rows are stored bottom-up
        for (int c = 0; c < width; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                float v = buf[(static_cast<std::size_t>(src_row) * width + c) * 3 + ch];
                if (file_little != host_is_little_endian()) v = byteswap_float(v);
                if (std::isnan(v)) throw FormatError("PFM: NaN in pixel payload");
                if (!std::isfinite(v)) throw FormatError("PFM: non-finite pixel value");
                if (v < 0.0f) throw FormatError("PFM: negative radiance is not a valid HDR sample");
                map.at(ch, r, c) = static_cast<double>(v);
            }
        }
    }
    return map;
}

void write_pfm(const EquirectMap& map, const std::string& path) {
    map.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("PFM: cannot open " + path + " for writing");
    out << "PF\n" << map.width << " " << map.height << "\n-1.0\n";

    std::vector<float> row(static_cast<std::size_t>(map.width) * 3);
    for (int r = map.height - 1; r >= 0; --r) {
        for (int c = 0; c < map.width; ++c)
            for (int ch = 0; ch < 3; ++ch) {
                float v = static_cast<float>(map.at(ch, r, c));
                if (!host_is_little_endian()) v = byteswap_float(v);
                row[static_cast<std::size_t>(c) * 3 + ch] = v;
            }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw FormatError("PFM: write failed for " + path);
}

} // namespace needletkit
