#pragma once

#include <span>

#include "slowlight/spectral.hpp"

namespace slowlight::detail {

// Unnormalised DFT: out[k] = Σ_j in[j]·exp(sign·2πi·jk/n), sign = ±1.
// Any length is accepted; in and out may alias.
void dft(std::span<const Complex> in, std::span<Complex> out, int sign);

}  // namespace slowlight::detail
