#pragma once

#include <string>

#include "needletkit/image.hpp"

namespace needletkit {

/// Read a color PFM ("PF" header, bottom-up rows, 32-bit floats).
/// Grayscale "Pf" files, NaN payloads and negative radiance are rejected.
EquirectMap read_pfm(const std::string& path);

/// Write a color PFM with little-endian payload (scale -1.0).
void write_pfm(const EquirectMap& map, const std::string& path);

} // namespace needletkit
