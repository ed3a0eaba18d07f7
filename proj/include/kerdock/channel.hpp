#pragma once

#include "kerdock/linalg.hpp"
#include "kerdock/rng.hpp"

namespace kerdock {

/// i.i.d. Rayleigh channel draw: mr x mt entries, each CN(0,1), filled
/// row-major so the stream layout is fixed.
inline ComplexMatrix draw_channel(TrialRng& rng, int mr, int mt) {
    ComplexMatrix h(mr, mt);
    for (int r = 0; r < mr; ++r)
        for (int c = 0; c < mt; ++c) h(r, c) = rng.cnormal();
    return h;
}

}  // namespace kerdock
