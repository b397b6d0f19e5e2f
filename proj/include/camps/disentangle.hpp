#pragma once

#include <vector>

#include "camps/clifford.hpp"
#include "camps/mps.hpp"

namespace camps {

struct GateLogEntry {
  int sweep = 0;
  int bond = 0;
  int gate_id = 0;
  double entropy_before = 0.0;
  double entropy_after = 0.0;
};

// An MPS together with the ordered Clifford gate log that produced it.
struct CampsRecord {
  Mps final_state;
  GateSetKind gate_set_kind = GateSetKind::CosetReduced;
  std::vector<GateLogEntry> log;
  std::vector<double> convergence_trace;  // half-chain SMEE after each sweep
  bool converged = false;
  int sweeps = 0;
  int sweeps_to_converge = 0;  // first sweep already within sweep_tol of the final SMEE
};

int half_chain_bond(int length);

// One pass over all bonds (direction +1 = left to right). At each bond every
// candidate gate's post-gate entropy at that cut is evaluated without
// truncation; the minimizer is applied exactly. Ties within tie_tol prefer
// the identity, then the lowest gate id, so results do not depend on
// evaluation order.
std::vector<GateLogEntry> sweep_once(Mps& state, const GateSet& gates, int direction,
                                     int sweep_index, double tie_tol = 1e-12);

struct DisentangleOptions {
  int max_sweeps = 16;
  double sweep_tol = 1e-8;
  double tie_tol = 1e-12;
};

// Alternating-direction sweeps until the half-chain entropy stops improving.
CampsRecord disentangle(const Mps& state, const GateSet& gates,
                        const DisentangleOptions& opts = {});

// Von Neumann entropies of the record's final state at every cut
// (ell = 1 .. L-1).
std::vector<double> smee_profile(const CampsRecord& record);

struct GainReport {
  int cut_sites = 0;  // ell
  int length = 0;
  double entropy_original = 0.0;      // S_A
  double entropy_disentangled = 0.0;  // S_A after the protocol
  double gain = 0.0;                  // difference of the two
};

GainReport entropy_gain(const Mps& original, const CampsRecord& record, int cut_sites);

struct GateSelectionMap {
  std::vector<GateLogEntry> entries;  // full (sweep, bond) -> gate table
  int modal_gate_id = -1;             // most common first-sweep bulk selection
  double bulk_uniformity = 0.0;       // fraction of bulk bonds picking it
  int bulk_margin = 4;
};

GateSelectionMap gate_selection_map(const CampsRecord& record, int bulk_margin = 4);

// Applies the inverse gate log to the final state and returns |<original|replay>|.
double replay_overlap(const Mps& original, const CampsRecord& record);

// The record's log as tableau applications, for conjugating Pauli strings
// through the recorded circuit.
std::vector<GateApplication> gate_applications(const CampsRecord& record);

const GateSet& gate_set_for(GateSetKind kind);

}  // namespace camps
