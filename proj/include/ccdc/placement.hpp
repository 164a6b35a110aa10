#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccdc/config.hpp"
#include "ccdc/subsets.hpp"

namespace ccdc {

// A batch is keyed by its job and the set of nodes that store it.
struct BatchKey {
  int job = 1;
  NodeSet holders;
  friend auto operator<=>(const BatchKey&, const BatchKey&) = default;
};

// Which files of which job sit on which node (M_k), organized into batches.
class Placement {
 public:
  Placement(int nodes, int jobs, int files_per_job);

  int nodes() const { return nodes_; }
  int jobs() const { return jobs_; }
  int files_per_job() const { return files_; }

  // Registers batch B_{holders} of `job` and stores its files on every holder.
  void add_batch(int job, NodeSet holders, std::vector<int> files);
  void set_job_subset(int job, NodeSet subset);

  bool stores(int node, FileRef file) const;
  const std::set<FileRef>& stored(int node) const;
  // File indices of the batch of `job` held by exactly `holders`.
  const std::vector<int>& batch(int job, NodeSet holders) const;
  const std::map<BatchKey, std::vector<int>>& batches() const { return batches_; }

  bool has_job_subsets() const { return !job_subset_.empty(); }
  // K_j; compressed-CDC placements only.
  NodeSet job_subset(int job) const;
  // Nodes storing `file`, ascending.
  std::vector<int> holders(FileRef file) const;

 private:
  int nodes_;
  int jobs_;
  int files_;
  std::vector<std::set<FileRef>> stored_;
  std::map<BatchKey, std::vector<int>> batches_;
  std::vector<NodeSet> job_subset_;
};

// Storage bound |M_k| <= mu J N, full coverage and, when the placement carries
// job subsets, r-fold replication of every file inside K_j.
std::vector<std::string> placement_violations(const Placement& placement, const SystemConfig& cfg);

// S_k^(j): node k reduces functions (k-1)Q/K+1 .. kQ/K of every job.
class ReduceAssignment {
 public:
  ReduceAssignment(int nodes, int functions, int jobs);

  int nodes() const { return nodes_; }
  const std::vector<int>& functions(int node, int job) const;
  std::vector<FunctionRef> function_refs(int node, int job) const;
  int owner(FunctionRef f) const;

 private:
  int nodes_;
  int functions_;
  int jobs_;
  std::vector<std::vector<std::vector<int>>> assigned_;  // [node-1][job-1]
};

ReduceAssignment assign_reducers(int K, int Q, int J);

}  // namespace ccdc
