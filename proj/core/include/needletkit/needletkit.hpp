#pragma once

#include "needletkit/coeff_io.hpp"
#include "needletkit/errors.hpp"
#include "needletkit/fit.hpp"
#include "needletkit/grids.hpp"
#include "needletkit/harmonics.hpp"
#include "needletkit/image.hpp"
#include "needletkit/needlet.hpp"
#include "needletkit/parallel.hpp"
#include "needletkit/pfm.hpp"
#include "needletkit/sparse.hpp"
#include "needletkit/sphdir.hpp"
#include "needletkit/transport.hpp"
