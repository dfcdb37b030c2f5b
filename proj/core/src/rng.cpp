#include "ellperc/rng.hpp"

#include <bit>

namespace ellperc {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t state = seed;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t id : ids) {
        std::uint64_t s = h ^ (id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        h = splitmix64(s);
    }
    return h;
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

Rng::result_type Rng::operator()() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    return Rng(derive_seed(seed, ids));
}

}  // namespace ellperc
