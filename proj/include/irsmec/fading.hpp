// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Rayleigh power-fading realizations, h ~ Exp(1), and Monte Carlo estimates
// of the expected direct-link throughput over them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "irsmec/core_model.hpp"

namespace irsmec {

/// Identifies one reproducible substream. Parallel sweeps use one stream_id
/// per sweep point; identical (seed, stream_id) always yields the same draws.
struct FadingSampler {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// First `count` draws of the sampler's substream, by inverse CDF h = -ln(u).
/// Every draw is strictly positive.
std::vector<double> sample_h(const FadingSampler& sampler, std::size_t count);

struct ThroughputEstimate {
    double mean_bps = 0.0;
    double half_width_bps = 0.0;  // 95% normal approximation
    std::size_t samples = 0;
};

/// Sample mean of the direct-link throughput with `link.fading_coeff`
/// replaced by each entry of `fading`.
ThroughputEstimate mean_throughput(const DirectLink& link, const RadioEnvironment& env,
                                   std::span<const double> fading);

ThroughputEstimate mean_throughput_mc(const DirectLink& link, const RadioEnvironment& env,
                                      const FadingSampler& sampler, std::size_t n_samples);

}  // namespace irsmec
