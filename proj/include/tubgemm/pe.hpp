#pragma once

#include <cstdint>
#include <string>

#include "tubgemm/encoding.hpp"
#include "tubgemm/errors.hpp"

namespace tubgemm {

// Accumulator width that holds N products of b-bit values plus a C term of
// equal width: 2b + ceil(log2(N)) + 1.
inline int default_acc_width(int bitwidth, std::int64_t inner_dim) {
    int log2n = 0;
    while ((std::int64_t{1} << log2n) < inner_dim) ++log2n;
    return 2 * bitwidth + log2n + 1;
}

// One multiply-accumulate cell. The accumulator honors |acc| < 2^(acc_width-1)
// at all times; exceeding it throws instead of wrapping.
struct PEState {
    std::int64_t accumulator = 0;
    int acc_width = 32;
};

inline std::int64_t acc_limit(int acc_width) {
    if (acc_width < 2 || acc_width > 63)
        throw DomainError("acc_width " + std::to_string(acc_width) + " outside [2, 63]");
    return std::int64_t{1} << (acc_width - 1);
}

// What the PE sees in one cycle: the unary pulse, the residue-correction value,
// the XOR of the operand sign bits, and the binary operand held for the step.
struct PECycleInput {
    bool pulse = false;
    std::int64_t residue = 0;
    bool sign_flip = false;
    std::int64_t b_operand = 0;
    std::int64_t unary_base = 2;
};

// One clock: when enabled (pulse or residue), add/subtract n*|b| from the
// accumulator, with residue*|b| in the residue-corrected cycle.
// A disabled cycle is the identity.
inline PEState pe_cycle(PEState state, const PECycleInput& in) {
    if (!in.pulse && in.residue == 0) return state;
    const std::int64_t abs_b = in.b_operand < 0 ? -in.b_operand : in.b_operand;
    const std::int64_t contribution = (in.residue != 0 ? in.residue : in.unary_base) * abs_b;
    state.accumulator += in.sign_flip ? -contribution : contribution;
    const std::int64_t limit = acc_limit(state.acc_width);
    if (state.accumulator >= limit || state.accumulator <= -limit)
        throw OverflowError("accumulator " + std::to_string(state.accumulator) +
                            " exceeds " + std::to_string(state.acc_width) + "-bit contract");
    return state;
}

// Full sequential multiply: drive pe_cycle over a's unary stream with b held
// binary. Adds exactly a*b in pulse_cycles(a, n) cycles.
inline PEState pe_multiply(PEState state, std::int64_t a, std::int64_t b, int bitwidth,
                           std::int64_t n, Polarity pol) {
    check_in_range(b, bitwidth, pol);
    const bool sign_flip = (a < 0) != (b < 0);
    for (const UnaryCycleEvent& ev : encode(a, bitwidth, n, pol)) {
        state = pe_cycle(state, PECycleInput{ev.pulse, ev.residue, sign_flip, b, n});
    }
    return state;
}

} // namespace tubgemm
