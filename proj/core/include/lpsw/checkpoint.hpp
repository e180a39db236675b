#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lpsw/field.hpp"
#include "lpsw/solver.hpp"

namespace lpsw {

// Versioned binary snapshot of a set of named spectral fields at one time.
//
// Layout (fixed, format version 1, little-endian host assumed):
//   bytes 0..7   magic "LPSWCKPT"
//   bytes 8..11  format version, uint32
//   bytes 12..15 header length H, uint32
//   bytes 16..16+H-1  JSON header: time, grid {dim, n, periods},
//                     fields [{name, ncomp, mean_zero}, ...]
//   remainder    per field, component-major, one (re, im) double pair per
//                coefficient, in storage order
// Doubles are written raw, so save/load round-trips coefficients bitwise
// and a ledger recomputed from a reloaded trajectory reproduces itself
// exactly.
struct Checkpoint {
    double time = 0.0;
    std::vector<std::pair<std::string, SpectralField>> fields;

    const SpectralField& field(const std::string& name) const;
};

void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

// solver-state adapters (field names q, ubar, ulin, u)
void save_state(const std::string& path, const SolverState& s);
SolverState load_state(const std::string& path);

}  // namespace lpsw
