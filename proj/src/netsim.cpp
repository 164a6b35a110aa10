#include "ccdc/netsim.hpp"

#include <ostream>

#include "ccdc/error.hpp"

namespace ccdc {

TraceLog::TraceLog(int nodes) : sent_(static_cast<std::size_t>(nodes), 0) {
  if (nodes < 1) throw ParameterError("network needs at least one node");
}

const Multicast& TraceLog::send(Multicast m) {
  if (m.sender < 1 || m.sender > nodes()) {
    throw ProtocolError("sender " + std::to_string(m.sender) + " out of range");
  }
  if (m.recipients.empty()) throw ProtocolError("multicast with no recipients");
  if (m.recipients.contains(m.sender)) {
    throw ProtocolError("self-delivery: node " + std::to_string(m.sender) + " in its own recipient set");
  }
  for (int k : m.recipients.members()) {
    if (k > nodes()) throw ProtocolError("recipient " + std::to_string(k) + " out of range");
  }
  if (m.bits != m.payload.bit_size()) throw ProtocolError("multicast bit count does not match payload");
  if (tamper_) {
    tamper_(log_.size(), m.payload);
    if (m.payload.bit_size() != m.bits) throw ProtocolError("tamper hook changed payload length");
  }
  sent_[static_cast<std::size_t>(m.sender - 1)] += m.bits;
  total_ += m.bits;
  log_.push_back(std::move(m));
  return log_.back();
}

std::uint64_t TraceLog::sent_bits(int node) const {
  if (node < 1 || node > nodes()) throw ParameterError("node out of range");
  return sent_[static_cast<std::size_t>(node - 1)];
}

std::vector<std::reference_wrapper<const Multicast>> TraceLog::inbox(
    int node, const std::function<bool(const MessageTag&)>& filter) const {
  std::vector<std::reference_wrapper<const Multicast>> out;
  for (const auto& m : log_) {
    if (m.recipients.contains(node) && (!filter || filter(m.tag))) out.emplace_back(m);
  }
  return out;
}

Rational measured_load(const TraceLog& log, int J, int Q, int T) {
  if (J < 1 || Q < 1 || T < 1) throw ParameterError("measured_load: J, Q, T must be positive");
  return Rational(static_cast<std::int64_t>(log.total_bits()),
                  static_cast<std::int64_t>(J) * Q * T);
}

Rational measured_load(const TraceLog& log, int J, int Q, int T,
                       const std::function<bool(const MessageTag&)>& filter) {
  if (J < 1 || Q < 1 || T < 1) throw ParameterError("measured_load: J, Q, T must be positive");
  std::int64_t bits = 0;
  for (const auto& m : log.messages()) {
    if (filter(m.tag)) bits += static_cast<std::int64_t>(m.bits);
  }
  return Rational(bits, static_cast<std::int64_t>(J) * Q * T);
}

void write_trace_csv(std::ostream& out, const TraceLog& log) {
  out << "seq,sender,recipients,bits,scheme,stage,subset_rank,outside_node,job\n";
  std::size_t seq = 0;
  for (const auto& m : log.messages()) {
    out << seq++ << ',' << m.sender << ',';
    bool first = true;
    for (int k : m.recipients.members()) {
      if (!first) out << ';';
      out << k;
      first = false;
    }
    out << ',' << m.bits << ',' << to_string(m.tag.scheme) << ',' << m.tag.stage << ','
        << m.tag.subset_rank << ',' << m.tag.outside_node << ',' << m.tag.job << '\n';
  }
}

}  // namespace ccdc
