#pragma once

#include "ccdc/shuffle.hpp"

namespace ccdc {

// Every needed raw value is unicast once by its lowest-index holder. Runs
// on the compressed-CDC placement so loads are comparable.
Outcome uncoded_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts = {});

// ceil(K/r) batches, node k stores batch ((k-1) mod ceil(K/r)) + 1 of every job.
// The batch key's holder set is the set of nodes storing it.
Placement compression_placement(const SystemConfig& cfg);

// Combiner-only shuffle: one pre-combined T-bit unicast per (receiver,
// function, foreign batch), sent by the lowest-index holder of the batch.
Outcome compression_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts = {});

// C(K,r) equal batches per job; the i-th batch lives on the i-th
// lexicographic size-r subset.
Placement cdc_placement(const SystemConfig& cfg);

// Values U_k for node k in an (r+1)-subset S, in ascending (q, n) order, as
// computed at `holder` (a member of S \ {k}).
CombinedPacket cdc_packet(RunContext& ctx, int holder, NodeSet group, int target, int job);

// Coded multicast of individual values within every (r+1)-subset, no
// pre-combining. Receivers recover every value they miss.
Outcome cdc_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts = {});

}  // namespace ccdc
