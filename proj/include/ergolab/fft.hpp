#pragma once

#include <vector>

#include "ergolab/types.hpp"

namespace ergolab {

/// In-place unnormalized DFT with positive exponent:
/// data[k] <- sum_n data[n] e^{+2 pi i n k / size}.
void dft_positive(std::vector<Complex>& data);

/// In-place unnormalized DFT with negative exponent.
void dft_negative(std::vector<Complex>& data);

}  // namespace ergolab
