#include "ccdc/compressed.hpp"

#include <set>

#include "ccdc/error.hpp"

namespace ccdc {
namespace {

int subset_count(const SystemConfig& cfg) { return static_cast<int>(binomial(cfg.K, cfg.r + 1)); }

int block_of(const SystemConfig& cfg, int job) { return (job - 1) / subset_count(cfg); }

int subset_rank(const SystemConfig& cfg, NodeSet subset) {
  return static_cast<int>(lex_rank(subset, cfg.K)) + 1;
}

void check_subset(const RunContext& ctx, NodeSet subset, int job) {
  if (ctx.placement.job_subset(job) != subset) {
    throw ParameterError("job " + std::to_string(job) + " is not placed on " + subset.to_string());
  }
}

CombinedPacket precombined_packet(RunContext& ctx, int holder, NodeSet label, int job, int target) {
  const auto& files = ctx.placement.batch(job, label);
  std::vector<IntermediateValue> sums;
  for (const auto& f : ctx.reducers.function_refs(target, job)) sums.push_back(ctx.mapper.precombine(holder, f, files));
  auto packet = make_packet(label, job, target, concat(sums));
  ctx.padded = ctx.padded || packet.padded();
  return packet;
}

}  // namespace

Placement ccdc_placement(const SystemConfig& cfg) {
  validate(cfg, Scheme::Ccdc);
  const auto subsets = lex_subsets(cfg.K, cfg.r + 1);
  const int per = cfg.N / (cfg.r + 1);
  Placement placement(cfg.K, cfg.jobs(), cfg.N);
  for (int b = 0; b < cfg.gamma; ++b) {
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      const int job = b * static_cast<int>(subsets.size()) + static_cast<int>(s) + 1;
      placement.set_job_subset(job, subsets[s]);
      const auto labels = lex_subsets_of(subsets[s], cfg.r);
      for (std::size_t p = 0; p < labels.size(); ++p) {
        std::vector<int> files;
        for (int n = static_cast<int>(p) * per + 1; n <= static_cast<int>(p + 1) * per; ++n) files.push_back(n);
        placement.add_batch(job, labels[p], std::move(files));
      }
    }
  }
  return placement;
}

int ccdc_job_for(const SystemConfig& cfg, int block, NodeSet subset) {
  if (subset.size() != cfg.r + 1) throw ParameterError("job subsets have r+1 nodes");
  return block * subset_count(cfg) + subset_rank(cfg, subset);
}

std::vector<CombinedPacket> stage1_precombine(RunContext& ctx, int node, NodeSet subset, int job) {
  if (!subset.contains(node)) {
    throw ParameterError("node " + std::to_string(node) + " is not a member of " + subset.to_string());
  }
  check_subset(ctx, subset, job);
  std::vector<CombinedPacket> out;
  for (const NodeSet& label : lex_subsets_of(subset, ctx.config.r)) {
    if (!label.contains(node)) continue;
    const int target = NodeSet::from_mask(subset.mask() & ~label.mask()).members().front();
    out.push_back(precombined_packet(ctx, node, label, job, target));
  }
  return out;
}

std::map<int, CombinedPacket> stage1_exchange(RunContext& ctx, NodeSet subset, int job,
                                              const Contributions& contributions) {
  check_subset(ctx, subset, job);
  const MessageTag tag{Scheme::Ccdc, 1, subset_rank(ctx.config, subset), 0, job};
  auto recovered = coded_exchange(subset, contributions, ctx.trace, tag);
  for (auto& [k, packet] : recovered) packet.job = job;
  return recovered;
}

void stage1_reduce(RunContext& ctx, int node, int job, const CombinedPacket& recovered) {
  const NodeSet subset = ctx.placement.job_subset(job);
  if (recovered.target != node || recovered.subset != subset.without(node)) {
    throw ProtocolError("stage-1 packet does not belong to node " + std::to_string(node));
  }
  const auto T = static_cast<std::size_t>(ctx.config.T);
  const auto fs = ctx.reducers.function_refs(node, job);
  auto values = unpack(recovered.payload, fs.size(), T);
  for (std::size_t qi = 0; qi < fs.size(); ++qi) {
    IntermediateValue acc = std::move(values[qi]);
    for (const NodeSet& label : lex_subsets_of(subset, ctx.config.r)) {
      if (!label.contains(node)) continue;
      group_accumulate(ctx.config.group, acc, ctx.mapper.precombine(node, fs[qi], ctx.placement.batch(job, label)));
    }
    ctx.emit(node, fs[qi], std::move(acc));
  }
}

Stage2Result stage2_exchange(RunContext& ctx, NodeSet subset, int job, int outside) {
  check_subset(ctx, subset, job);
  if (outside < 1 || outside > ctx.config.K || subset.contains(outside)) {
    throw ParameterError("outside node " + std::to_string(outside) + " must lie outside " + subset.to_string());
  }
  const int block = block_of(ctx.config, job);
  // j_t: the job stored on {i} ∪ K_j \ {t}; its batch P_{j_t} = K_j \ {t}.
  std::map<int, int> job_of_target;
  for (int t : subset.members()) job_of_target[t] = ccdc_job_for(ctx.config, block, subset.without(t).with(outside));

  Stage2Result result;
  for (int h : subset.members()) {
    for (int t : subset.without(h).members()) {
      result.sent[h].push_back(precombined_packet(ctx, h, subset.without(t), job_of_target[t], t));
    }
  }
  const MessageTag tag{Scheme::Ccdc, 2, subset_rank(ctx.config, subset), outside, job};
  result.recovered = coded_exchange(subset, result.sent, ctx.trace, tag);

  const auto T = static_cast<std::size_t>(ctx.config.T);
  for (auto& [k, packet] : result.recovered) {
    packet.job = job_of_target[k];
    const auto fs = ctx.reducers.function_refs(k, packet.job);
    auto values = unpack(packet.payload, fs.size(), T);
    for (std::size_t qi = 0; qi < fs.size(); ++qi) {
      result.partial_sums[k].push_back(PartialSum{fs[qi], packet.subset, std::move(values[qi])});
    }
  }
  return result;
}

std::map<FunctionRef, IntermediateValue> ccdc_final_reduce(const RunContext& ctx, int node, int job,
                                                           std::span<const PartialSum> sums) {
  const NodeSet subset = ctx.placement.job_subset(job);
  if (subset.contains(node)) {
    throw ParameterError("node " + std::to_string(node) + " belongs to K_" + std::to_string(job) +
                         " and reduces that job in stage 1");
  }
  std::set<NodeSet> expected;
  for (int k : subset.members()) expected.insert(subset.without(k));

  std::map<FunctionRef, IntermediateValue> out;
  for (const auto& f : ctx.reducers.function_refs(node, job)) {
    std::set<NodeSet> seen;
    std::set<int> files;
    std::size_t file_count = 0;
    IntermediateValue acc = group_identity(static_cast<std::size_t>(ctx.config.T));
    for (const auto& ps : sums) {
      if (ps.function != f) continue;
      if (!expected.contains(ps.batch)) {
        throw IncompleteShuffleError("unexpected partial-sum batch " + ps.batch.to_string() + " for job " +
                                     std::to_string(job));
      }
      if (!seen.insert(ps.batch).second) {
        throw IncompleteShuffleError("duplicate partial-sum batch " + ps.batch.to_string() + " for job " +
                                     std::to_string(job));
      }
      const auto& batch = ctx.placement.batch(job, ps.batch);
      files.insert(batch.begin(), batch.end());
      file_count += batch.size();
      group_accumulate(ctx.config.group, acc, ps.payload);
    }
    if (seen != expected) {
      throw IncompleteShuffleError("node " + std::to_string(node) + " is missing partial sums for function " +
                                   std::to_string(f.index) + " of job " + std::to_string(job));
    }
    if (files.size() != file_count || static_cast<int>(files.size()) != ctx.config.N) {
      throw IncompleteShuffleError("partial-sum batches do not partition the files of job " + std::to_string(job));
    }
    out.emplace(f, std::move(acc));
  }
  return out;
}

Outcome ccdc_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts) {
  RunContext ctx(cfg, w, ccdc_placement(cfg), opts);
  std::map<std::pair<int, int>, std::vector<PartialSum>> pending;  // (node, job)
  for (int job = 1; job <= cfg.jobs(); ++job) {
    const NodeSet subset = ctx.placement.job_subset(job);
    Contributions contributions;
    for (int k : subset.members()) contributions[k] = stage1_precombine(ctx, k, subset, job);
    const auto recovered = stage1_exchange(ctx, subset, job, contributions);
    for (const auto& [k, packet] : recovered) stage1_reduce(ctx, k, job, packet);

    for (int i = 1; i <= cfg.K; ++i) {
      if (subset.contains(i)) continue;
      auto stage2 = stage2_exchange(ctx, subset, job, i);
      for (auto& [k, sums] : stage2.partial_sums) {
        for (auto& ps : sums) pending[{k, ps.function.job}].push_back(std::move(ps));
      }
    }
  }
  for (int job = 1; job <= cfg.jobs(); ++job) {
    const NodeSet subset = ctx.placement.job_subset(job);
    for (int k = 1; k <= cfg.K; ++k) {
      if (subset.contains(k)) continue;
      for (auto& [f, v] : ccdc_final_reduce(ctx, k, job, pending[{k, job}])) ctx.emit(k, f, std::move(v));
    }
  }
  return ctx.finish();
}

}  // namespace ccdc
