#include "latgossip/engine.hpp"

#include <algorithm>

namespace latgossip {

void write_trace_line(std::ostream& out, const ExchangeEvent& e) {
  out << e.start_round << ' ' << e.initiator << ' ' << e.responder << ' ' << e.latency << ' '
      << e.deliver_round << '\n';
}

std::optional<std::uint64_t> Metrics::completed_at() const {
  std::uint64_t last = 0;
  for (const auto& r : completion_round) {
    if (!r) return std::nullopt;
    last = std::max(last, *r);
  }
  return last;
}

std::optional<std::size_t> NodeView::index_of(NodeId w) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), w);
  if (it == ids_.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

Latency NodeView::latency(std::size_t i) const {
  if (!knows_latency(i)) {
    throw ContractViolation("node " + std::to_string(id_) + " read the undisclosed latency of edge to " +
                            std::to_string(ids_[i]));
  }
  return adjacency_[i].latency;
}

}  // namespace latgossip
