#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fpb {

// Checkpointed cumulative expected regret of one episode. cum_regret[k] is the
// regret accumulated through round checkpoints[k]; it is non-decreasing because
// every per-round term is a max-minus-member gap. cum_aux is an optional
// parallel column (realized payoff for auctions, cost-formulation regret for
// inventory), empty when unused.
struct RegretTrace {
  int replication = 0;
  std::uint64_t seed = 0;
  std::vector<long long> checkpoints;
  std::vector<double> cum_regret;
  std::vector<double> cum_aux;
  double oracle_total = 0.0;  // sum over rounds of the best available reward
  double final_level = 0.0;   // inventory only: empirical-argmax order level
  double wall_seconds = 0.0;
};

struct SummaryRow {
  long long horizon = 0;
  long long checkpoint = 0;
  double mean = 0.0;
  double stddev = 0.0;
  int n = 0;
};

// Long-format CSV `rep,t,cum_regret[,<aux_column>]`, one row per (replication,
// checkpoint), %.17g so values round-trip exactly. Pass a non-empty aux_column
// name to emit traces' cum_aux.
void write_trace_csv(const std::string& path,
                     const std::vector<RegretTrace>& traces,
                     const std::string& aux_column = "");

// `T,checkpoint,mean,std,n`.
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

// Reproducibility sidecar: `key=value` lines in the given order.
void write_sidecar(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

struct TraceRow {
  int replication = 0;
  long long t = 0;
  double cum_regret = 0.0;
  double aux = 0.0;
  bool has_aux = false;
};

std::vector<TraceRow> read_trace_csv(const std::string& path);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

}  // namespace fpb
