#include "ccdc/placement.hpp"

#include "ccdc/error.hpp"

namespace ccdc {

Placement::Placement(int nodes, int jobs, int files_per_job)
    : nodes_(nodes), jobs_(jobs), files_(files_per_job), stored_(static_cast<std::size_t>(nodes)) {
  if (nodes < 1 || jobs < 1 || files_per_job < 1) {
    throw ConfigError("placement needs at least one node, job and file");
  }
}

void Placement::add_batch(int job, NodeSet holders, std::vector<int> files) {
  if (job < 1 || job > jobs_) throw PlacementError("batch job index out of range");
  for (int k : holders.members()) {
    if (k > nodes_) throw PlacementError("batch holder " + std::to_string(k) + " out of range");
    for (int n : files) {
      if (n < 1 || n > files_) throw PlacementError("batch file index out of range");
      stored_[static_cast<std::size_t>(k - 1)].insert(FileRef{job, n});
    }
  }
  auto [it, inserted] = batches_.emplace(BatchKey{job, holders}, std::move(files));
  if (!inserted) {
    throw PlacementError("duplicate batch " + holders.to_string() + " for job " + std::to_string(job));
  }
}

void Placement::set_job_subset(int job, NodeSet subset) {
  if (job < 1 || job > jobs_) throw PlacementError("job index out of range");
  if (job_subset_.empty()) job_subset_.resize(static_cast<std::size_t>(jobs_));
  job_subset_[static_cast<std::size_t>(job - 1)] = subset;
}

bool Placement::stores(int node, FileRef file) const {
  if (node < 1 || node > nodes_) return false;
  return stored_[static_cast<std::size_t>(node - 1)].contains(file);
}

const std::set<FileRef>& Placement::stored(int node) const {
  if (node < 1 || node > nodes_) throw PlacementError("node " + std::to_string(node) + " out of range");
  return stored_[static_cast<std::size_t>(node - 1)];
}

const std::vector<int>& Placement::batch(int job, NodeSet holders) const {
  auto it = batches_.find(BatchKey{job, holders});
  if (it == batches_.end()) {
    throw PlacementError("no batch " + holders.to_string() + " for job " + std::to_string(job));
  }
  return it->second;
}

NodeSet Placement::job_subset(int job) const {
  if (job_subset_.empty()) throw PlacementError("placement has no job subsets");
  if (job < 1 || job > jobs_) throw PlacementError("job index out of range");
  return job_subset_[static_cast<std::size_t>(job - 1)];
}

std::vector<int> Placement::holders(FileRef file) const {
  std::vector<int> out;
  for (int k = 1; k <= nodes_; ++k) {
    if (stores(k, file)) out.push_back(k);
  }
  return out;
}

std::vector<std::string> placement_violations(const Placement& placement, const SystemConfig& cfg) {
  std::vector<std::string> out;
  const std::int64_t J = placement.jobs();
  const std::int64_t N = placement.files_per_job();
  // |M_k| <= (r/K) J N, cross-multiplied to stay in integers.
  for (int k = 1; k <= placement.nodes(); ++k) {
    const auto held = static_cast<std::int64_t>(placement.stored(k).size());
    if (held * cfg.K > static_cast<std::int64_t>(cfg.r) * J * N) {
      out.push_back("node " + std::to_string(k) + " stores " + std::to_string(held) +
                    " files, above mu*J*N");
    }
  }
  for (int j = 1; j <= J; ++j) {
    for (int n = 1; n <= N; ++n) {
      const auto h = placement.holders(FileRef{j, n});
      if (h.empty()) {
        out.push_back("file " + std::to_string(n) + " of job " + std::to_string(j) + " is stored nowhere");
        continue;
      }
      if (!placement.has_job_subsets()) continue;
      const NodeSet subset = placement.job_subset(j);
      if (static_cast<int>(h.size()) != cfg.r) {
        out.push_back("file " + std::to_string(n) + " of job " + std::to_string(j) + " has " +
                      std::to_string(h.size()) + " replicas, expected r");
      }
      for (int k : h) {
        if (!subset.contains(k)) {
          out.push_back("file " + std::to_string(n) + " of job " + std::to_string(j) +
                        " stored on node " + std::to_string(k) + " outside K_j");
        }
      }
    }
  }
  return out;
}

ReduceAssignment::ReduceAssignment(int nodes, int functions, int jobs)
    : nodes_(nodes), functions_(functions), jobs_(jobs) {
  if (nodes < 1 || functions % nodes != 0) throw ConfigError("K must divide Q");
  const int per = functions / nodes;
  assigned_.resize(static_cast<std::size_t>(nodes));
  for (int k = 1; k <= nodes; ++k) {
    std::vector<int> block;
    for (int q = (k - 1) * per + 1; q <= k * per; ++q) block.push_back(q);
    assigned_[static_cast<std::size_t>(k - 1)].assign(static_cast<std::size_t>(jobs), block);
  }
}

const std::vector<int>& ReduceAssignment::functions(int node, int job) const {
  if (node < 1 || node > nodes_ || job < 1 || job > jobs_) {
    throw ParameterError("reduce assignment lookup out of range");
  }
  return assigned_[static_cast<std::size_t>(node - 1)][static_cast<std::size_t>(job - 1)];
}

std::vector<FunctionRef> ReduceAssignment::function_refs(int node, int job) const {
  std::vector<FunctionRef> out;
  for (int q : functions(node, job)) out.push_back(FunctionRef{job, q});
  return out;
}

int ReduceAssignment::owner(FunctionRef f) const {
  if (f.index < 1 || f.index > functions_ || f.job < 1 || f.job > jobs_) {
    throw ParameterError("function reference out of range");
  }
  return (f.index - 1) / (functions_ / nodes_) + 1;
}

ReduceAssignment assign_reducers(int K, int Q, int J) {
  if (K < 1 || Q % K != 0) throw ConfigError("K must divide Q");
  return ReduceAssignment(K, Q, J);
}

}  // namespace ccdc
