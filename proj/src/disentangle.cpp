#include "camps/disentangle.hpp"

#include <algorithm>
#include <cmath>

namespace camps {

namespace {

double entropy_from_squared(const VecD& p_sorted) {
  double s = 0.0;
  for (double p : p_sorted) {
    if (p < kSingularZero * kSingularZero) continue;
    s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

}  // namespace

int half_chain_bond(int length) { return (length - 1) / 2; }

const GateSet& gate_set_for(GateSetKind kind) {
  if (kind == GateSetKind::CosetReduced) return coset_gate_set();
  static const GateSet full = full_gate_set();
  return full;
}

std::vector<GateLogEntry> sweep_once(Mps& state, const GateSet& gates, int direction,
                                     int sweep_index, double tie_tol) {
  const int length = state.length();
  std::vector<GateLogEntry> log;
  log.reserve(length - 1);
  std::vector<int> bonds(length - 1);
  for (int b = 0; b < length - 1; ++b) bonds[b] = (direction >= 0) ? b : length - 2 - b;
  move_center(state, direction >= 0 ? bonds.front() : bonds.front() + 1);
  for (int bond : bonds) {
    const auto theta = two_site_blocks(state, bond);
    // Candidate entropies at this cut; the identity candidate reproduces the
    // current entropy, so the selection can never increase it.
    std::vector<double> entropy(gates.size());
    for (int id = 0; id < gates.size(); ++id)
      entropy[id] = entropy_from_squared(
          schmidt_squared(gate_on_blocks(theta, gates[id].unitary)));
    const double min_entropy = *std::min_element(entropy.begin(), entropy.end());
    // Among near-ties keep the identity if possible, else the lowest id.
    int best = gates.identity_id;
    if (entropy[best] > min_entropy + tie_tol) {
      for (int id = 0; id < gates.size(); ++id)
        if (entropy[id] <= min_entropy + tie_tol) {
          best = id;
          break;
        }
    }
    GateStats stats =
        apply_gate_at_bond(state, bond, gates[best].unitary, direction, 0, 0.0);
    GateLogEntry entry;
    entry.sweep = sweep_index;
    entry.bond = bond;
    entry.gate_id = best;
    entry.entropy_before = entropy[gates.identity_id];
    entry.entropy_after = entropy_from_schmidt(stats.schmidt, 1.0);
    log.push_back(entry);
  }
  return log;
}

CampsRecord disentangle(const Mps& state, const GateSet& gates,
                        const DisentangleOptions& opts) {
  if (opts.max_sweeps < 1) throw ValidationError("disentangle: max_sweeps >= 1");
  CampsRecord record;
  record.gate_set_kind = gates.kind;
  Mps work = canonicalize(state, 0);
  const int hbond = half_chain_bond(work.length());
  double prev = entanglement_entropy(work, hbond, 1.0);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const int direction = (sweep % 2 == 0) ? +1 : -1;
    auto swept = sweep_once(work, gates, direction, sweep, opts.tie_tol);
    record.log.insert(record.log.end(), swept.begin(), swept.end());
    const double smee = entanglement_entropy(work, hbond, 1.0);
    record.convergence_trace.push_back(smee);
    record.sweeps = sweep + 1;
    if (prev - smee < opts.sweep_tol) {
      record.converged = true;
      break;
    }
    prev = smee;
  }
  const double final_smee = record.convergence_trace.back();
  record.sweeps_to_converge = record.sweeps;
  for (int s = 0; s < record.sweeps; ++s) {
    if (record.convergence_trace[s] - final_smee < opts.sweep_tol) {
      record.sweeps_to_converge = s + 1;
      break;
    }
  }
  record.final_state = canonicalize(work, 0);
  return record;
}

std::vector<double> smee_profile(const CampsRecord& record) {
  return entropy_profile(record.final_state, 1.0);
}

GainReport entropy_gain(const Mps& original, const CampsRecord& record, int cut_sites) {
  if (original.length() != record.final_state.length())
    throw ValidationError("entropy_gain: length mismatch");
  GainReport report;
  report.length = original.length();
  report.cut_sites = cut_sites;
  const int bond = cut_sites - 1;
  if (bond < 0 || bond + 1 >= original.length())
    throw ValidationError("entropy_gain: cut out of range");
  const Mps* orig = &original;
  Mps canon;
  if (!original.lambdas_valid(bond)) {
    canon = canonicalize(original, 0);
    orig = &canon;
  }
  report.entropy_original = entanglement_entropy(*orig, bond, 1.0);
  report.entropy_disentangled = entanglement_entropy(record.final_state, bond, 1.0);
  report.gain = report.entropy_original - report.entropy_disentangled;
  return report;
}

GateSelectionMap gate_selection_map(const CampsRecord& record, int bulk_margin) {
  GateSelectionMap map;
  map.entries = record.log;
  map.bulk_margin = bulk_margin;
  const int length = record.final_state.length();
  std::vector<int> counts;
  for (const auto& entry : record.log) {
    if (entry.sweep != 0) continue;
    if (entry.bond < bulk_margin || entry.bond > length - 2 - bulk_margin) continue;
    if (entry.gate_id >= static_cast<int>(counts.size()))
      counts.resize(entry.gate_id + 1, 0);
    ++counts[entry.gate_id];
  }
  int total = 0, best_count = -1;
  for (std::size_t id = 0; id < counts.size(); ++id) {
    total += counts[id];
    if (counts[id] > best_count) {
      best_count = counts[id];
      map.modal_gate_id = static_cast<int>(id);
    }
  }
  map.bulk_uniformity = total > 0 ? double(best_count) / double(total) : 0.0;
  return map;
}

double replay_overlap(const Mps& original, const CampsRecord& record) {
  const GateSet& gates = gate_set_for(record.gate_set_kind);
  Mps work = record.final_state;
  for (auto it = record.log.rbegin(); it != record.log.rend(); ++it) {
    const Mat4 inverse = gates[it->gate_id].unitary.adjoint();
    apply_gate_at_bond(work, it->bond, inverse, +1, 0, 0.0);
  }
  return std::abs(overlap(original, work));
}

std::vector<GateApplication> gate_applications(const CampsRecord& record) {
  const GateSet& gates = gate_set_for(record.gate_set_kind);
  std::vector<GateApplication> out;
  out.reserve(record.log.size());
  for (const auto& entry : record.log)
    out.push_back({entry.bond, gates[entry.gate_id].tableau});
  return out;
}

}  // namespace camps
