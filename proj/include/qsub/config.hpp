#pragma once

namespace qsub {

// Default ceiling on register width k. A flagged k-bit state needs 2^(k+1)
// dense amplitudes, so the default keeps any single state under 2 MiB.
// Overridable per call site (the CLI wires QSUB_MAX_BITS through).
inline constexpr int kDefaultMaxBits = 16;

}  // namespace qsub
