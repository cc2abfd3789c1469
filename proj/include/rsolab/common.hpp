#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rso {

// Error taxonomy shared with the C API status codes.
enum class errc {
    ok = 0,
    invalid_argument,  // contract violations, bad keys, domain errors, coverage gaps
    parse,             // config syntax or schema violations
    geometry,          // invalid plans, radii overlap, empty regions where forbidden
    numeric,           // not positive definite, conditioning failures, degenerate data
    capacity,          // problem size beyond configured solver cap
    io,                // filesystem failures, shard hash mismatch
    internal
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

// Compensated accumulator. Neumaier variant: exact for sums whose partials
// alternate in magnitude, which trace sums over spectra routinely do.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

// FNV-1a 64-bit. Used for config hashes and matrix fingerprints; stable
// across platforms, unlike std::hash.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a(s.data(), s.size(), h);
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[v & 0xf];
        v >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace rso
