#pragma once

#include <map>
#include <span>
#include <vector>

#include "ccdc/shuffle.hpp"

namespace ccdc {

// The "ccdc" scheme: coded multicast shuffling of pre-combined values.
//
// Jobs are placed one per (r+1)-subset K_j of nodes. Within K_j each file
// batch B_P, P a size-r subset of K_j, is stored on every node of P. Shuffling
// runs per subset in two stages:
//
//   stage 1  the nodes of K_j pre-combine job-j values for the one member of
//            K_j outside each P, then exchange coded multicasts so every
//            member finishes its own functions of job j;
//   stage 2  for every node i outside K_j, the same exchange is run over
//            batches of the jobs placed on {i} ∪ K_j \ {k}, leaving node k
//            with one partial sum per owned function of that job.
//
// A node k outside K_j' collects r+1 such partial sums for job j' and adds
// them up in the final reduction.

// Job j (within each gamma block, lexicographic) is stored on the j-th
// (r+1)-subset; its N files are cut into r+1 contiguous blocks assigned to
// the size-r subsets of K_j in lexicographic order.
Placement ccdc_placement(const SystemConfig& cfg);

// Job placed on `subset` within gamma block `block` (0-based).
int ccdc_job_for(const SystemConfig& cfg, int block, NodeSet subset);

struct PartialSum {
  FunctionRef function;
  NodeSet batch;  // the size-r subset labelling the batch it covers
  IntermediateValue payload;
};

// Packets V_P that `node` builds for every size-r P ⊂ K_j containing it: the
// pre-combined values v̄_{q,P}, q ∈ S_{k'}, k' = K_j \ P, concatenated by
// ascending q and split into r labelled segments.
std::vector<CombinedPacket> stage1_precombine(RunContext& ctx, int node, NodeSet subset, int job);

// Intra-job coded multicast within K_j. Returns, per member k, the recovered
// V_{K_j \ {k}}.
std::map<int, CombinedPacket> stage1_exchange(RunContext& ctx, NodeSet subset, int job,
                                              const Contributions& contributions);

// φ_q for q ∈ S_k^(j): the recovered pre-combined value plus the r local batch
// sums. Results are emitted into ctx.
void stage1_reduce(RunContext& ctx, int node, int job, const CombinedPacket& recovered);

struct Stage2Result {
  Contributions sent;                                 // sender-side packets
  std::map<int, CombinedPacket> recovered;            // target -> decoded V_{P_{j_k}}
  std::map<int, std::vector<PartialSum>> partial_sums;  // receiving node -> sums
};

// Cross-job coded multicast within K_j coordinated by outside node i.
Stage2Result stage2_exchange(RunContext& ctx, NodeSet subset, int job, int outside);

// φ_q for q ∈ S_k^(j') from exactly r+1 partial sums whose batches are
// {K_j' \ {k'} : k' ∈ K_j'}.
std::map<FunctionRef, IntermediateValue> ccdc_final_reduce(const RunContext& ctx, int node, int job,
                                                           std::span<const PartialSum> sums);

Outcome ccdc_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts = {});

}  // namespace ccdc
