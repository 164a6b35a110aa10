#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <vector>

#include "ccdc/config.hpp"
#include "ccdc/payload.hpp"
#include "ccdc/rational.hpp"
#include "ccdc/subsets.hpp"

namespace ccdc {

// Provenance of a transmission. Zero means "not applicable".
struct MessageTag {
  Scheme scheme = Scheme::Ccdc;
  int stage = 0;         // 1 or 2 for compressed CDC, 0 otherwise
  int subset_rank = 0;   // 1-based lexicographic rank of the coordinating subset
  int outside_node = 0;  // stage-2 outside node i
  int job = 0;
  friend bool operator==(const MessageTag&, const MessageTag&) = default;
};

struct Multicast {
  int sender = 0;
  NodeSet recipients;
  BitString payload;
  std::uint64_t bits = 0;
  MessageTag tag;
};

// Error-free broadcast network: an append-only log with per-sender bit totals.
// Records are address-stable, so a reference returned by send stays valid.
class TraceLog {
 public:
  // Rewrites the delivered payload of message `seq` (its length is kept).
  using Tamper = std::function<void(std::size_t seq, BitString& payload)>;

  explicit TraceLog(int nodes);

  // Validates, charges the sender once and delivers to every recipient.
  // Returns the delivered record.
  const Multicast& send(Multicast m);
  void set_tamper(Tamper tamper) { tamper_ = std::move(tamper); }

  int nodes() const { return static_cast<int>(sent_.size()); }
  std::size_t size() const { return log_.size(); }
  const Multicast& at(std::size_t seq) const { return log_.at(seq); }
  const std::deque<Multicast>& messages() const { return log_; }

  std::uint64_t sent_bits(int node) const;
  std::uint64_t total_bits() const { return total_; }

  std::vector<std::reference_wrapper<const Multicast>> inbox(
      int node, const std::function<bool(const MessageTag&)>& filter = {}) const;

 private:
  std::deque<Multicast> log_;
  std::vector<std::uint64_t> sent_;
  std::uint64_t total_ = 0;
  Tamper tamper_;
};

// (l_1 + ... + l_K) / (J Q T)
Rational measured_load(const TraceLog& log, int J, int Q, int T);
// Same normalization restricted to matching messages.
Rational measured_load(const TraceLog& log, int J, int Q, int T,
                       const std::function<bool(const MessageTag&)>& filter);

// Columns: seq,sender,recipients,bits,scheme,stage,subset_rank,outside_node,job.
// Recipients are ';'-separated node labels.
void write_trace_csv(std::ostream& out, const TraceLog& log);

}  // namespace ccdc
