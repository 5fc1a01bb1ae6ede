#include "qmob/random.hpp"

#include <cmath>
#include <numbers>

#include "qmob/errors.hpp"

namespace qmob {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

Quaternion gaussian4(CounterRng& rng) {
    return {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
}

}  // namespace

CounterRng CounterRng::split(std::uint64_t sub) const noexcept {
    return CounterRng(seed_, mix64(stream_ ^ mix64(sub + kGolden)));
}

CounterRng CounterRng::split(std::string_view name) const noexcept { return split(fnv1a(name)); }

std::uint64_t CounterRng::next_u64() noexcept {
    const std::uint64_t key = mix64(seed_ + kGolden) ^ mix64(stream_ * kGolden + 0x632BE59BD9B4E019ULL);
    return mix64(key + (++counter_) * kGolden);
}

double CounterRng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    // Box-Muller, one draw per call; u1 in (0, 1]
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Quaternion random_quat(CounterRng& rng, SampleSpec spec) {
    switch (spec.kind) {
        case SampleKind::unit:
            return random_unit(rng).value();
        case SampleKind::imaginary_unit:
            return random_imaginary_unit(rng).value();
        case SampleKind::ball: {
            if (!(spec.rmax > 0.0 && spec.rmax < 1.0)) throw BadParameter("ball radius must lie in (0, 1)");
            const Quaternion dir = random_unit(rng).value();
            // radius law r^3 dr for a uniform 4-ball
            const double r = spec.rmax * std::sqrt(std::sqrt(rng.uniform()));
            Quaternion q = r * dir;
            if (const double n = q.norm(); n > spec.rmax) q *= (spec.rmax / n) * (1.0 - 4e-16);
            return q;
        }
    }
    throw BadParameter("unknown sample kind");
}

Quaternion random_quat(std::uint64_t seed, std::uint64_t stream, SampleSpec spec) {
    CounterRng rng(seed, stream);
    return random_quat(rng, spec);
}

UnitQuaternion random_unit(CounterRng& rng) {
    for (;;) {
        const Quaternion g = gaussian4(rng);
        if (g.norm() > 1e-6) return UnitQuaternion::normalized(g);
    }
}

ImaginaryUnit random_imaginary_unit(CounterRng& rng) {
    for (;;) {
        const Quaternion g{0.0, rng.normal(), rng.normal(), rng.normal()};
        if (g.norm() > 1e-6) return ImaginaryUnit::normalized(g);
    }
}

Quaternion random_pure_imaginary(CounterRng& rng, double rmax) {
    const Quaternion dir = random_imaginary_unit(rng).value();
    return rmax * std::cbrt(rng.uniform()) * dir;
}

}  // namespace qmob
