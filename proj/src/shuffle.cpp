#include "ccdc/shuffle.hpp"

#include "ccdc/error.hpp"

namespace ccdc {

RunContext::RunContext(const SystemConfig& cfg, const Workload& w, Placement p, const RunOptions& opts)
    : config(cfg),
      placement(std::move(p)),
      reducers(assign_reducers(cfg.K, cfg.Q, cfg.jobs())),
      mapper(w, config, placement),
      trace(cfg.K) {
  if (opts.tamper) trace.set_tamper(opts.tamper);
}

void RunContext::emit(int node, FunctionRef f, IntermediateValue value) {
  if (reducers.owner(f) != node) {
    throw ProtocolError("node " + std::to_string(node) + " reduced function " + std::to_string(f.index) +
                        " of job " + std::to_string(f.job) + " it does not own");
  }
  if (value.bit_size() != static_cast<std::size_t>(config.T)) throw PayloadError("output is not T bits");
  if (!outputs.emplace(f, std::move(value)).second) {
    throw ProtocolError("function " + std::to_string(f.index) + " of job " + std::to_string(f.job) +
                        " reduced twice");
  }
  reducer.emplace(f, node);
}

Outcome RunContext::finish() {
  const std::size_t expected = static_cast<std::size_t>(config.jobs()) * static_cast<std::size_t>(config.Q);
  if (outputs.size() != expected) {
    throw IncompleteShuffleError("only " + std::to_string(outputs.size()) + " of " + std::to_string(expected) +
                                 " outputs were reduced");
  }
  Outcome out;
  out.config = config;
  out.load = measured_load(trace, config.jobs(), config.Q, config.T);
  out.outputs = std::move(outputs);
  out.reducer = std::move(reducer);
  out.map_work = mapper.work();
  out.trace = std::move(trace);
  out.padded = padded;
  return out;
}

const BitString& CombinedPacket::segment(int label) const {
  const auto m = subset.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == label) return segments.at(i);
  }
  throw ProtocolError("packet for " + subset.to_string() + " has no segment labelled " + std::to_string(label));
}

bool CombinedPacket::padded() const {
  std::size_t total = 0;
  for (const auto& s : segments) total += s.bit_size();
  return total != payload_bits;
}

CombinedPacket make_packet(NodeSet subset, int job, int target, BitString payload) {
  CombinedPacket p;
  p.subset = subset;
  p.job = job;
  p.target = target;
  p.payload_bits = payload.bit_size();
  p.segments = split_packet(payload, subset.size());
  p.payload = std::move(payload);
  return p;
}

BitString concat(const std::vector<IntermediateValue>& values) {
  BitString out;
  for (const auto& v : values) out.append(v);
  return out;
}

std::vector<IntermediateValue> unpack(const BitString& packet, std::size_t count, std::size_t bits) {
  if (packet.bit_size() != count * bits) throw PayloadError("unpack: packet length does not match layout");
  std::vector<IntermediateValue> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(packet.slice(i * bits, bits));
  return out;
}

namespace {

const CombinedPacket& packet_for(const std::vector<CombinedPacket>& held, int target) {
  for (const auto& p : held) {
    if (p.target == target) return p;
  }
  throw ProtocolError("missing contribution for target " + std::to_string(target));
}

void check_contributions(NodeSet group, const Contributions& contributions) {
  std::size_t segment_bits = 0;
  std::size_t payload_bits = 0;
  bool first = true;
  for (int k : group.members()) {
    auto it = contributions.find(k);
    if (it == contributions.end()) throw ProtocolError("node " + std::to_string(k) + " contributed nothing");
    if (static_cast<int>(it->second.size()) != group.size() - 1) {
      throw ProtocolError("node " + std::to_string(k) + " must hold one packet per other group member");
    }
    for (int t : group.without(k).members()) {
      const auto& p = packet_for(it->second, t);
      if (p.subset != group.without(t) || static_cast<int>(p.segments.size()) != p.subset.size()) {
        throw ProtocolError("packet for target " + std::to_string(t) + " is not labelled by group \\ {target}");
      }
      for (const auto& s : p.segments) {
        if (first) {
          segment_bits = s.bit_size();
          payload_bits = p.payload_bits;
          first = false;
        } else if (s.bit_size() != segment_bits || p.payload_bits != payload_bits) {
          throw ProtocolError("contributions within a group must share one packet layout");
        }
      }
    }
  }
}

}  // namespace

std::map<int, CombinedPacket> coded_exchange(NodeSet group, const Contributions& contributions,
                                             TraceLog& trace, const MessageTag& tag) {
  if (group.size() < 2) throw ProtocolError("coded exchange needs at least two nodes");
  check_contributions(group, contributions);
  const auto members = group.members();

  // Sender side.
  std::map<int, std::reference_wrapper<const Multicast>> delivered;
  for (int k : members) {
    const auto& held = contributions.at(k);
    BitString coded(held.front().segments.front().bit_size());
    for (const auto& p : held) coded ^= p.segment(k);
    Multicast m;
    m.sender = k;
    m.recipients = group.without(k);
    m.bits = coded.bit_size();
    m.payload = std::move(coded);
    m.tag = tag;
    delivered.emplace(k, trace.send(std::move(m)));
  }

  // Receiver side: node k only consults contributions.at(k).
  std::map<int, CombinedPacket> recovered;
  for (int k : members) {
    const auto& own = contributions.at(k);
    const NodeSet label_set = group.without(k);
    std::vector<BitString> segments;
    for (int sender : label_set.members()) {
      BitString seg = delivered.at(sender).get().payload;
      for (int t : group.without(k).without(sender).members()) seg ^= packet_for(own, t).segment(sender);
      segments.push_back(std::move(seg));
    }
    CombinedPacket p;
    p.subset = label_set;
    p.target = k;
    p.payload_bits = own.front().payload_bits;
    p.payload = join_segments(segments, p.payload_bits);
    p.segments = std::move(segments);
    recovered.emplace(k, std::move(p));
  }
  return recovered;
}

}  // namespace ccdc
