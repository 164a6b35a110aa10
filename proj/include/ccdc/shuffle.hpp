#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ccdc/config.hpp"
#include "ccdc/netsim.hpp"
#include "ccdc/payload.hpp"
#include "ccdc/placement.hpp"
#include "ccdc/rational.hpp"
#include "ccdc/workload.hpp"

namespace ccdc {

struct RunOptions {
  // Fault injection on delivered payloads; empty for a clean run.
  TraceLog::Tamper tamper;
};

// Result of one scheme execution.
struct Outcome {
  SystemConfig config;
  std::map<FunctionRef, IntermediateValue> outputs;
  std::map<FunctionRef, int> reducer;  // node that produced each output
  Rational load;
  TraceLog trace{1};
  std::vector<std::uint64_t> map_work;  // values computed, per node
  bool padded = false;                  // some packet needed zero padding
};

// Per-run state: placement, reducer assignment, node-side mapper and the
// network. Pinned in memory because the mapper refers back to it.
struct RunContext {
  RunContext(const SystemConfig& cfg, const Workload& w, Placement p, const RunOptions& opts = {});
  RunContext(const RunContext&) = delete;
  RunContext& operator=(const RunContext&) = delete;

  const SystemConfig config;
  const Placement placement;
  const ReduceAssignment reducers;
  Mapper mapper;
  TraceLog trace;
  bool padded = false;
  std::map<FunctionRef, IntermediateValue> outputs;
  std::map<FunctionRef, int> reducer;

  // Records φ_f as reduced at `node`. Rejects wrong owners and duplicates.
  void emit(int node, FunctionRef f, IntermediateValue value);
  // Checks all J*Q outputs exist and moves the results out.
  Outcome finish();
};

// A packet V_P intended for `target` and known to every node in `subset`,
// split into |subset| segments labelled by the members of `subset` in
// ascending order.
struct CombinedPacket {
  NodeSet subset;
  int job = 0;
  int target = 0;
  std::size_t payload_bits = 0;  // before padding
  BitString payload;
  std::vector<BitString> segments;

  const BitString& segment(int label) const;
  bool padded() const;
};

CombinedPacket make_packet(NodeSet subset, int job, int target, BitString payload);

// Concatenation of values in the given order.
BitString concat(const std::vector<IntermediateValue>& values);
// Inverse of concat for `count` values of `bits` bits each.
std::vector<IntermediateValue> unpack(const BitString& packet, std::size_t count, std::size_t bits);

// holder -> the packets it built locally, one per target in group \ {holder}.
using Contributions = std::map<int, std::vector<CombinedPacket>>;

// One coded multicast round within `group`: every member k sends to the rest
// the XOR of the segments labelled k across its packets. Each receiver cancels
// the segments it holds and reassembles the packet meant for it, using only
// its own contributions. Returns target -> recovered packet (job left 0).
std::map<int, CombinedPacket> coded_exchange(NodeSet group, const Contributions& contributions,
                                             TraceLog& trace, const MessageTag& tag);

}  // namespace ccdc
