#pragma once

#include <string>

#include "needletkit/needlet.hpp"

namespace needletkit {

/// Versioned on-disk form of a needlet coefficient set. Human-readable
/// JSON, value-identical across write/read.
struct CoeffFile {
    int version = 1;
    double B = 2.0;
    int j_max = 3;
    CubatureScheme scheme = CubatureScheme::PaperMatching;
    NeedletCoeffs coeffs;
    std::string provenance;

    NeedletFrame frame() const { return NeedletFrame::build(B, j_max, scheme); }
};

void write_coeff_file(const CoeffFile& file, const std::string& path);
CoeffFile read_coeff_file(const std::string& path);

} // namespace needletkit
