#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

/// Same-class SMOTE interpolation applied to latent rows; classes end up
/// exactly balanced and original latent rows are untouched.
AugmentedDataset dsm(const Dataset& latent, Index k, std::uint64_t seed);

/// Nearest-adversary interpolation: minority latent rows are moved toward
/// one of their k nearest other-class rows with lambda ~ Uniform(0, 0.5),
/// keeping the minority label. The cap keeps every synthetic row strictly
/// closer to its minority parent than to the adversary.
AugmentedDataset eos(const Dataset& latent, Index k, std::uint64_t seed);

} // namespace imbaug
