#include "ccdc/baseline.hpp"

#include "ccdc/compressed.hpp"
#include "ccdc/error.hpp"

namespace ccdc {
namespace {

std::vector<int> local_files(const Placement& placement, int node, int job) {
  std::vector<int> out;
  for (const auto& f : placement.stored(node)) {
    if (f.job == job) out.push_back(f.index);
  }
  return out;
}

int compression_batches(const SystemConfig& cfg) { return (cfg.K + cfg.r - 1) / cfg.r; }

int compression_batch_of(const SystemConfig& cfg, int node) { return (node - 1) % compression_batches(cfg) + 1; }

NodeSet compression_holders(const SystemConfig& cfg, int batch) {
  NodeSet holders;
  for (int k = 1; k <= cfg.K; ++k) {
    if (compression_batch_of(cfg, k) == batch) holders = holders.with(k);
  }
  return holders;
}

}  // namespace

Outcome uncoded_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts) {
  validate(cfg, Scheme::Uncoded);
  RunContext ctx(cfg, w, ccdc_placement(cfg), opts);
  const auto T = static_cast<std::size_t>(cfg.T);
  for (int j = 1; j <= cfg.jobs(); ++j) {
    for (int k = 1; k <= cfg.K; ++k) {
      const auto local = local_files(ctx.placement, k, j);
      for (const auto& f : ctx.reducers.function_refs(k, j)) {
        IntermediateValue acc = ctx.mapper.precombine(k, f, local);
        for (int n = 1; n <= cfg.N; ++n) {
          const FileRef file{j, n};
          if (ctx.placement.stores(k, file)) continue;
          const int sender = ctx.placement.holders(file).front();
          Multicast m;
          m.sender = sender;
          m.recipients = NodeSet{k};
          m.payload = ctx.mapper.map_one(sender, f, file);
          m.bits = T;
          m.tag = MessageTag{Scheme::Uncoded, 0, 0, 0, j};
          group_accumulate(cfg.group, acc, ctx.trace.send(std::move(m)).payload);
        }
        ctx.emit(k, f, std::move(acc));
      }
    }
  }
  return ctx.finish();
}

Placement compression_placement(const SystemConfig& cfg) {
  validate(cfg, Scheme::Compression);
  const int c = compression_batches(cfg);
  const int per = cfg.r * cfg.N / cfg.K;
  Placement placement(cfg.K, cfg.jobs(), cfg.N);
  for (int j = 1; j <= cfg.jobs(); ++j) {
    for (int t = 1; t <= c; ++t) {
      std::vector<int> files;
      const int last = (t == c) ? cfg.N : t * per;
      for (int n = (t - 1) * per + 1; n <= last; ++n) files.push_back(n);
      placement.add_batch(j, compression_holders(cfg, t), std::move(files));
    }
  }
  return placement;
}

Outcome compression_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts) {
  RunContext ctx(cfg, w, compression_placement(cfg), opts);
  const int c = compression_batches(cfg);
  for (int j = 1; j <= cfg.jobs(); ++j) {
    for (int k = 1; k <= cfg.K; ++k) {
      const int own = compression_batch_of(cfg, k);
      for (const auto& f : ctx.reducers.function_refs(k, j)) {
        IntermediateValue acc =
            ctx.mapper.precombine(k, f, ctx.placement.batch(j, compression_holders(cfg, own)));
        for (int t = 1; t <= c; ++t) {
          if (t == own) continue;
          const NodeSet holders = compression_holders(cfg, t);
          const int sender = holders.members().front();
          Multicast m;
          m.sender = sender;
          m.recipients = NodeSet{k};
          m.payload = ctx.mapper.precombine(sender, f, ctx.placement.batch(j, holders));
          m.bits = m.payload.bit_size();
          m.tag = MessageTag{Scheme::Compression, 0, t, 0, j};
          group_accumulate(cfg.group, acc, ctx.trace.send(std::move(m)).payload);
        }
        ctx.emit(k, f, std::move(acc));
      }
    }
  }
  return ctx.finish();
}

Placement cdc_placement(const SystemConfig& cfg) {
  validate(cfg, Scheme::Cdc);
  const auto subsets = lex_subsets(cfg.K, cfg.r);
  const int per = cfg.N / static_cast<int>(subsets.size());
  Placement placement(cfg.K, cfg.jobs(), cfg.N);
  for (int j = 1; j <= cfg.jobs(); ++j) {
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      std::vector<int> files;
      for (int n = static_cast<int>(i) * per + 1; n <= static_cast<int>(i + 1) * per; ++n) files.push_back(n);
      placement.add_batch(j, subsets[i], std::move(files));
    }
  }
  return placement;
}

CombinedPacket cdc_packet(RunContext& ctx, int holder, NodeSet group, int target, int job) {
  const NodeSet label = group.without(target);
  if (!label.contains(holder)) throw ParameterError("cdc_packet: holder must be in group \\ {target}");
  const auto& files = ctx.placement.batch(job, label);
  std::vector<IntermediateValue> values;
  for (const auto& f : ctx.reducers.function_refs(target, job)) {
    for (int n : files) values.push_back(ctx.mapper.map_one(holder, f, FileRef{job, n}));
  }
  return make_packet(label, job, target, concat(values));
}

Outcome cdc_run(const SystemConfig& cfg, const Workload& w, const RunOptions& opts) {
  RunContext ctx(cfg, w, cdc_placement(cfg), opts);
  const auto groups = lex_subsets(cfg.K, cfg.r + 1);
  const auto T = static_cast<std::size_t>(cfg.T);
  for (int j = 1; j <= cfg.jobs(); ++j) {
    // acc[k] holds the running sums for S_k, in ascending function order.
    std::map<int, std::vector<IntermediateValue>> acc;
    for (int k = 1; k <= cfg.K; ++k) {
      const auto local = local_files(ctx.placement, k, j);
      for (const auto& f : ctx.reducers.function_refs(k, j)) acc[k].push_back(ctx.mapper.precombine(k, f, local));
    }
    for (std::size_t s = 0; s < groups.size(); ++s) {
      const NodeSet group = groups[s];
      Contributions contributions;
      for (int h : group.members()) {
        for (int t : group.without(h).members()) contributions[h].push_back(cdc_packet(ctx, h, group, t, j));
        for (const auto& p : contributions[h]) ctx.padded = ctx.padded || p.padded();
      }
      const MessageTag tag{Scheme::Cdc, 0, static_cast<int>(s) + 1, 0, j};
      const auto recovered = coded_exchange(group, contributions, ctx.trace, tag);
      for (const auto& [k, packet] : recovered) {
        const std::size_t batch = ctx.placement.batch(j, group.without(k)).size();
        const auto fs = ctx.reducers.functions(k, j);
        const auto values = unpack(packet.payload, fs.size() * batch, T);
        for (std::size_t qi = 0; qi < fs.size(); ++qi) {
          for (std::size_t ni = 0; ni < batch; ++ni) group_accumulate(cfg.group, acc[k][qi], values[qi * batch + ni]);
        }
      }
    }
    for (int k = 1; k <= cfg.K; ++k) {
      const auto fs = ctx.reducers.function_refs(k, j);
      for (std::size_t qi = 0; qi < fs.size(); ++qi) ctx.emit(k, fs[qi], std::move(acc[k][qi]));
    }
  }
  return ctx.finish();
}

}  // namespace ccdc
