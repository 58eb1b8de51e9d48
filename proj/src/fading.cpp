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

#include "irsmec/fading.hpp"

#include <cmath>
#include <random>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform on (0, 1) from the top 53 bits; the half-offset keeps u away from
// both ends so -ln(u) is finite and strictly positive.
double open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<double> sample_h(const FadingSampler& sampler, std::size_t count) {
    std::mt19937_64 engine(splitmix64(sampler.seed) ^ splitmix64(~sampler.stream_id));
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(-std::log(open_unit(engine())));
    }
    return out;
}

ThroughputEstimate mean_throughput(const DirectLink& link, const RadioEnvironment& env,
                                   std::span<const double> fading) {
    if (fading.empty()) {
        throw DomainError("mean_throughput needs at least one fading sample");
    }
    // Welford keeps the variance stable for 1e6+ samples.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
    DirectLink faded = link;
    for (double h : fading) {
        faded.fading_coeff = h;
        const double r = uplink_rate_direct(faded, env);
        ++n;
        const double delta = r - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (r - mean);
    }
    ThroughputEstimate est;
    est.mean_bps = mean;
    est.samples = n;
    if (n > 1) {
        const double stddev = std::sqrt(m2 / static_cast<double>(n - 1));
        est.half_width_bps = 1.96 * stddev / std::sqrt(static_cast<double>(n));
    }
    return est;
}

ThroughputEstimate mean_throughput_mc(const DirectLink& link, const RadioEnvironment& env,
                                      const FadingSampler& sampler, std::size_t n_samples) {
    if (n_samples < 1) {
        throw DomainError("n_samples must be >= 1");
    }
    const auto draws = sample_h(sampler, n_samples);
    return mean_throughput(link, env, draws);
}

}  // namespace irsmec
