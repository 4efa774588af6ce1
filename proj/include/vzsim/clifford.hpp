// The 24-element single-qubit Clifford group: matrices, group tables, and
// minimal decompositions into the two playable basis sets (finite-duration
// quarter-turn pulses; Hadamard plus virtual Z rotations), together with
// randomized-benchmarking sequence construction.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vzsim/schedule.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

// Basis gates for Clifford decompositions. The first four are finite-duration
// quarter turns; the last four are zero-duration virtual rotations. Hadamard
// is the single finite-duration member of the virtual-Z basis.
enum class BasisGate : int {
  XPlus90 = 0,
  XMinus90,
  YPlus90,
  YMinus90,
  Hadamard,
  IdentityZ,
  ZPlus90,
  ZMinus90,
  ZPi,
};

bool is_finite_duration(BasisGate g);
Mat2 basis_gate_matrix(BasisGate g);
const char* basis_gate_name(BasisGate g);

using BasisWord = std::vector<BasisGate>;  // temporal order

struct CliffordTable {
  std::array<Mat2, 24> matrix;
  std::array<BasisWord, 24> xy_word;
  std::array<BasisWord, 24> hz_word;
  // product[a][b] = index of matrix[a] * matrix[b] (i.e. b played first).
  std::array<std::array<std::uint8_t, 24>, 24> product;
  std::array<std::uint8_t, 24> inverse;
  int identity_index = 0;

  int xy_total_gates = 0;          // all finite-duration
  int hz_total_gates = 0;          // finite + virtual
  int hz_total_hadamards = 0;      // finite-duration share of the above
  double xy_mean_gates() const { return xy_total_gates / 24.0; }
  double hz_mean_gates() const { return hz_total_gates / 24.0; }
};

// Deterministic construction (fixed generator order); safe to build once and
// share. Throws std::logic_error if any internal consistency check fails.
CliffordTable build_clifford_table();

// Index of the Clifford equal to u up to global phase, or -1.
int clifford_index_of(const CliffordTable& table, const Mat2& u);

// Compose a temporal word into its matrix.
Mat2 word_matrix(const BasisWord& word);

// A benchmarking sequence: m uniformly random Cliffords plus the recovery
// element that inverts their product.
struct RbSequence {
  std::vector<int> cliffords;  // temporal order, excludes recovery
  int recovery = 0;
};

// Draw the sequence for stream `key` (see rng.hpp). Draw k uses counter k.
RbSequence rb_sequence(int m, std::uint64_t key, const CliffordTable& table);

// Insert `gate_index` after each random Clifford and recompute the recovery.
RbSequence interleave(const RbSequence& seq, int gate_index,
                      const CliffordTable& table);

// Expand one Clifford into a playable schedule on `channel`. Each finite-
// duration basis gate becomes one pi/2 pulse at the appropriate nominal
// phase; virtual gates become VZ instructions. When `vz_correction` is
// nonzero every pulse is wrapped as [VZ(xi), pulse, VZ(xi)] (the detuning
// correction sandwich).
GateSchedule clifford_schedule(const CliffordTable& table, int index,
                               bool use_hz_basis, const std::string& channel,
                               double vz_correction = 0.0);

GateSchedule basis_gate_schedule(BasisGate g, const std::string& channel,
                                 double vz_correction = 0.0);

}  // namespace vzsim
