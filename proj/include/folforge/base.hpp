#ifndef FOLFORGE_BASE_HPP
#define FOLFORGE_BASE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace folforge {

// Every failure carries a stable machine-readable code ("ZeroPolynomial",
// "AmbientMismatch", ...).  `input` errors map to CLI exit 3, `check`
// failures (a scripted verification that did not hold) to exit 2.
struct error : std::runtime_error {
    enum class kind_t { input, check };
    std::string code;
    kind_t kind;
    error(std::string c, const std::string& msg, kind_t k = kind_t::input)
        : std::runtime_error(c + ": " + msg), code(std::move(c)), kind(k) {}
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
    throw error(std::move(code), msg, error::kind_t::input);
}

[[noreturn]] inline void fail_check(std::string code, const std::string& msg) {
    throw error(std::move(code), msg, error::kind_t::check);
}

inline void require(bool ok, const char* code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

// Deterministic seeded generator (splitmix64).  std::mt19937 would be
// portable too, but the standard distributions are not; all sampling in
// the library goes through this so that equal seeds give identical runs
// on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    // small nonzero integer in [-k, k]
    long small_nonzero(long k) {
        long v = 0;
        while (v == 0) v = range(-k, k);
        return v;
    }

    Rng fork(uint64_t salt) { return Rng(next() ^ (salt * 0xd1342543de82ef95ULL)); }

  private:
    uint64_t state_;
};

} // namespace folforge

#endif
