#pragma once

#include <cstdint>
#include <string_view>

#include "qmob/quaternion.hpp"

namespace qmob {

/// Counter-based generator keyed by (seed, stream). The n-th draw is a pure
/// function of (seed, stream, n), so streams can be split per suite and per
/// trial and replayed independently.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept : seed_(seed), stream_(stream) {}

    /// Child stream; distinct `sub` values give independent sequences.
    [[nodiscard]] CounterRng split(std::uint64_t sub) const noexcept;
    [[nodiscard]] CounterRng split(std::string_view name) const noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1).
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    double normal() noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

enum class SampleKind { unit, ball, imaginary_unit };

struct SampleSpec {
    SampleKind kind = SampleKind::unit;
    double rmax = 0.9;  ///< only read for SampleKind::ball

    static SampleSpec unit() noexcept { return {SampleKind::unit, 0.0}; }
    static SampleSpec ball(double r) noexcept { return {SampleKind::ball, r}; }
    static SampleSpec imaginary_unit() noexcept { return {SampleKind::imaginary_unit, 0.0}; }
};

/// Unit kind is uniform on S^3, ball kind uniform in the rmax-ball, imaginary
/// kind uniform on the sphere of imaginary units. BadParameter if rmax is not in (0, 1).
Quaternion random_quat(CounterRng& rng, SampleSpec spec);
Quaternion random_quat(std::uint64_t seed, std::uint64_t stream, SampleSpec spec);

UnitQuaternion random_unit(CounterRng& rng);
ImaginaryUnit random_imaginary_unit(CounterRng& rng);
/// Purely imaginary quaternion with uniform direction and |w| <= rmax.
Quaternion random_pure_imaginary(CounterRng& rng, double rmax);

}  // namespace qmob
