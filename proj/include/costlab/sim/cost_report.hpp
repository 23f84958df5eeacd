#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace costlab::sim {

/// One matrix shipped at a phase boundary. Broadcast items are counted once
/// in the primary totals (data produced, not fan-out); the fan-out column
/// multiplies them by the worker count.
struct EmittedMatrix {
  std::string label;
  std::uint64_t elements = 0;
  bool broadcast = false;
};

/// One synchronous execution phase: per-worker local flop counts plus the
/// intermediate matrices exchanged at its end. Worker 0 doubles as the
/// driver, so driver-side stages land in its slot.
struct Phase {
  std::string name;
  std::vector<std::uint64_t> local_flops;
  std::vector<EmittedMatrix> emitted;

  std::uint64_t phase_flops() const;
  std::uint64_t phase_elements() const;
};

using PhasePlan = std::vector<Phase>;

/// Ledger produced by run_phased: the phase plan plus totals (bytes are
/// elements x 8) and an echo of the experiment parameters.
struct CostReport {
  PhasePlan phases;
  std::uint64_t total_flops = 0;
  std::uint64_t total_intermediate_elements = 0;
  std::uint64_t total_intermediate_bytes = 0;
  std::uint64_t total_fanout_elements = 0;  // broadcasts counted per worker
  std::vector<std::pair<std::string, std::string>> params_echo;
};

/// Fills in the totals from the phases. Recomputing is idempotent.
CostReport finalize_report(
    PhasePlan phases,
    std::vector<std::pair<std::string, std::string>> params_echo,
    std::size_t workers);

/// JSON document with stable field order: phases, totals, params_echo.
std::string to_json(const CostReport& report);

/// CSV, one row per phase: phase_name, worker_flops_total, emitted_elements.
std::string to_csv(const CostReport& report);

}  // namespace costlab::sim
