#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tubgemm/errors.hpp"

namespace tubgemm {

// Operand interpretation: unipolar = unsigned, bipolar = two's complement.
enum class Polarity { unipolar, bipolar };

inline const char* to_string(Polarity p) {
    return p == Polarity::unipolar ? "unipolar" : "bipolar";
}

inline Polarity polarity_from_string(std::string_view s) {
    if (s == "unipolar") return Polarity::unipolar;
    if (s == "bipolar") return Polarity::bipolar;
    throw DomainError("unknown polarity '" + std::string(s) + "' (expected unipolar|bipolar)");
}

constexpr bool is_supported_bitwidth(int b) { return b == 2 || b == 4 || b == 8; }
constexpr bool is_supported_unary_base(std::int64_t n) { return n == 1 || n == 2 || n == 4 || n == 8; }

// Largest representable magnitude: 2^b - 1 unipolar; 2^(b-1) bipolar
// (the most negative two's-complement value).
constexpr std::int64_t max_magnitude(int bitwidth, Polarity pol) {
    return pol == Polarity::unipolar ? (std::int64_t{1} << bitwidth) - 1
                                     : (std::int64_t{1} << (bitwidth - 1));
}

constexpr std::int64_t min_value(int bitwidth, Polarity pol) {
    return pol == Polarity::unipolar ? 0 : -(std::int64_t{1} << (bitwidth - 1));
}

constexpr std::int64_t max_value(int bitwidth, Polarity pol) {
    return pol == Polarity::unipolar ? (std::int64_t{1} << bitwidth) - 1
                                     : (std::int64_t{1} << (bitwidth - 1)) - 1;
}

constexpr bool in_range(std::int64_t value, int bitwidth, Polarity pol) {
    return value >= min_value(bitwidth, pol) && value <= max_value(bitwidth, pol);
}

inline void check_bitwidth(int bitwidth) {
    if (!is_supported_bitwidth(bitwidth))
        throw DomainError("unsupported bitwidth " + std::to_string(bitwidth) + " (expected 2|4|8)");
}

inline void check_unary_base(std::int64_t n) {
    if (!is_supported_unary_base(n))
        throw DomainError("unsupported unary base " + std::to_string(n) + " (expected 1|2|4|8)");
}

inline void check_in_range(std::int64_t value, int bitwidth, Polarity pol) {
    if (!in_range(value, bitwidth, pol))
        throw DomainError("value " + std::to_string(value) + " out of range for " +
                          std::to_string(bitwidth) + "-bit " + to_string(pol));
}

// One encoder output cycle. The n-unary generalization of the n=2 odd flag:
// a full pulse cycle carries magnitude n; the final pulse cycle carries the
// residue |v| mod n instead when that residue is nonzero.
struct UnaryCycleEvent {
    bool pulse = false;
    std::int64_t residue = 0; // in [0, n-1], nonzero only in the final pulse cycle
};

// Total asserted cycles for |value| at base n: ceil(|value| / n). Zero for zero.
inline std::int64_t pulse_cycles(std::int64_t value, std::int64_t n) {
    const std::uint64_t mag = value < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(value)
                                        : static_cast<std::uint64_t>(value);
    return static_cast<std::int64_t>((mag + static_cast<std::uint64_t>(n) - 1) /
                                     static_cast<std::uint64_t>(n));
}

// Upper bound on the cycles one multiply can take: the maximum-magnitude
// operand fully serialized. 2^b-1 pulses at n=1 unipolar, 2^(b-2) at n=2 bipolar.
inline std::int64_t worst_case_mult_cycles(int bitwidth, Polarity pol, std::int64_t n) {
    return pulse_cycles(max_magnitude(bitwidth, pol), n);
}

// A value's temporal-unary view: magnitude stream plus an out-of-band sign.
struct EncodedOperand {
    std::int64_t value = 0;
    std::int64_t magnitude = 0;
    int sign = 1; // +1 or -1
    int bitwidth = 8;
    std::int64_t unary_base = 2;

    std::int64_t pulse_count() const { return pulse_cycles(magnitude, unary_base); }
    std::int64_t residue() const { return magnitude % unary_base; }
};

inline EncodedOperand make_operand(std::int64_t value, int bitwidth, std::int64_t n, Polarity pol) {
    check_bitwidth(bitwidth);
    check_unary_base(n);
    check_in_range(value, bitwidth, pol);
    EncodedOperand op;
    op.value = value;
    op.magnitude = value < 0 ? -value : value;
    op.sign = value < 0 ? -1 : 1;
    op.bitwidth = bitwidth;
    op.unary_base = n;
    return op;
}

// Temporal-unary encode of |value|: the counter starts at 0 and increments by
// n each cycle; the comparator holds the output high while |value| > counter.
// That yields exactly ceil(|value|/n) asserted cycles, with the residue
// correction overlapped in the last one. Sign travels separately.
inline std::vector<UnaryCycleEvent> encode(std::int64_t value, int bitwidth, std::int64_t n,
                                           Polarity pol) {
    const EncodedOperand op = make_operand(value, bitwidth, n, pol);
    std::vector<UnaryCycleEvent> stream(static_cast<std::size_t>(op.pulse_count()),
                                        UnaryCycleEvent{true, 0});
    if (!stream.empty()) stream.back().residue = op.residue();
    return stream;
}

// Inverse of encode, for round-trip checks. Accepts trailing deasserted
// cycles; everything else malformed is a FormatError.
inline std::int64_t decode(std::span<const UnaryCycleEvent> stream, std::int64_t n, int sign) {
    check_unary_base(n);
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");

    std::int64_t pulses = 0;
    std::int64_t residue = 0;
    bool gap_seen = false;
    for (const UnaryCycleEvent& ev : stream) {
        if (!ev.pulse) {
            if (ev.residue != 0) throw FormatError("residue asserted outside a pulse cycle");
            gap_seen = true;
            continue;
        }
        if (gap_seen) throw FormatError("pulse after gap");
        if (residue != 0) throw FormatError("residue asserted before the final pulse cycle");
        if (ev.residue < 0 || ev.residue >= n) throw FormatError("residue out of [0, n)");
        ++pulses;
        residue = ev.residue;
    }
    if (pulses == 0) return 0;
    const std::int64_t magnitude = n * pulses - (residue != 0 ? n - residue : 0);
    return sign * magnitude;
}

inline std::int64_t decode(const std::vector<UnaryCycleEvent>& stream, std::int64_t n, int sign) {
    return decode(std::span<const UnaryCycleEvent>(stream.data(), stream.size()), n, sign);
}

} // namespace tubgemm
