#include "costlab/sim/cost_report.hpp"

#include <sstream>

#include <json.hpp>

namespace costlab::sim {

using ordered_json = nlohmann::ordered_json;

std::uint64_t Phase::phase_flops() const {
  std::uint64_t acc = 0;
  for (std::uint64_t f : local_flops) acc += f;
  return acc;
}

std::uint64_t Phase::phase_elements() const {
  std::uint64_t acc = 0;
  for (const auto& e : emitted) acc += e.elements;
  return acc;
}

CostReport finalize_report(
    PhasePlan phases,
    std::vector<std::pair<std::string, std::string>> params_echo,
    std::size_t workers) {
  CostReport report;
  report.phases = std::move(phases);
  report.params_echo = std::move(params_echo);
  for (const Phase& ph : report.phases) {
    report.total_flops += ph.phase_flops();
    report.total_intermediate_elements += ph.phase_elements();
    for (const auto& e : ph.emitted)
      report.total_fanout_elements += e.broadcast ? e.elements * workers : e.elements;
  }
  report.total_intermediate_bytes = report.total_intermediate_elements * 8;
  return report;
}

std::string to_json(const CostReport& report) {
  ordered_json doc;
  ordered_json phases = ordered_json::array();
  for (const Phase& ph : report.phases) {
    ordered_json jp;
    jp["name"] = ph.name;
    jp["local_flops"] = ph.local_flops;
    ordered_json emitted = ordered_json::array();
    for (const auto& e : ph.emitted) {
      ordered_json je;
      je["label"] = e.label;
      je["elements"] = e.elements;
      je["broadcast"] = e.broadcast;
      emitted.push_back(std::move(je));
    }
    jp["emitted"] = std::move(emitted);
    jp["phase_flops"] = ph.phase_flops();
    jp["phase_elements"] = ph.phase_elements();
    phases.push_back(std::move(jp));
  }
  doc["phases"] = std::move(phases);
  doc["totals"] = {{"flops", report.total_flops},
                   {"intermediate_elements", report.total_intermediate_elements},
                   {"intermediate_bytes", report.total_intermediate_bytes},
                   {"fanout_elements", report.total_fanout_elements}};
  ordered_json echo;
  for (const auto& [key, value] : report.params_echo) echo[key] = value;
  doc["params_echo"] = std::move(echo);
  return doc.dump(2) + "\n";
}

std::string to_csv(const CostReport& report) {
  std::ostringstream out;
  out << "phase_name,worker_flops_total,emitted_elements\n";
  for (const Phase& ph : report.phases)
    out << ph.name << ',' << ph.phase_flops() << ',' << ph.phase_elements()
        << '\n';
  return out.str();
}

}  // namespace costlab::sim
