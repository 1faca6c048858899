#include "needletkit/image.hpp"

namespace needletkit {

EquirectMap rotate_columns(const EquirectMap& m, int columns) {
    EquirectMap out(m.height, m.width);
    const int W = m.width;
    int shift = columns % W;
    if (shift < 0) shift += W;
    for (int ch = 0; ch < 3; ++ch)
        for (int r = 0; r < m.height; ++r)
            for (int c = 0; c < W; ++c) out.at(ch, r, (c + shift) % W) = m.at(ch, r, c);
    return out;
}

} // namespace needletkit
