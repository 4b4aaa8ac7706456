#pragma once

#include "rampr/coloring.hpp"
#include "rampr/config.hpp"

namespace rampr {

/// Raised when a search hands back an unsound result. Reaching this is
/// always a bug in the engine, never user error; the CLI maps it to its own
/// exit code.
struct SoundnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Independent check of a search output: values in range, formula satisfied
/// under plain evaluation, and every block monochromatic with the recorded
/// color. Deliberately ignorant of how the search found the witness.
inline void verify_witness(const Configuration& c, const Witness& w, const Coloring& col,
                           uint64_t N, const FunctionTable& fns = FunctionTable::builtins()) {
    if (w.values.size() != c.vars.size())
        throw SoundnessError("witness misses variables");
    for (uint64_t v : w.values)
        if (v < 1 || v > N)
            throw SoundnessError("witness value outside [1..N]");
    if (!holds(c, w, fns))
        throw SoundnessError("witness does not satisfy the formula");
    if (w.block_colors.size() != c.blocks.size())
        throw SoundnessError("witness misses block colors");
    auto bmap = c.block_map();
    for (size_t i = 0; i < c.vars.size(); ++i) {
        uint32_t expect = w.block_colors[bmap[i]];
        if (col.color_of(w.values[i]) != expect)
            throw SoundnessError("block " + std::to_string(bmap[i]) +
                                 " is not monochromatic under the recorded color");
    }
}

} // namespace rampr
