#include "fpb/harness/results.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fpb {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

void write_trace_csv(const std::string& path,
                     const std::vector<RegretTrace>& traces,
                     const std::string& aux_column) {
  auto out = open_out(path);
  out << "rep,t,cum_regret";
  if (!aux_column.empty()) out << ',' << aux_column;
  out << '\n';
  for (const auto& tr : traces) {
    if (tr.cum_regret.size() != tr.checkpoints.size() ||
        (!aux_column.empty() && tr.cum_aux.size() != tr.checkpoints.size()))
      throw std::invalid_argument("trace columns disagree with checkpoints");
    for (std::size_t k = 0; k < tr.checkpoints.size(); ++k) {
      out << tr.replication << ',' << tr.checkpoints[k] << ','
          << fmt(tr.cum_regret[k]);
      if (!aux_column.empty()) out << ',' << fmt(tr.cum_aux[k]);
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  auto out = open_out(path);
  out << "T,checkpoint,mean,std,n\n";
  for (const auto& r : rows)
    out << r.horizon << ',' << r.checkpoint << ',' << fmt(r.mean) << ','
        << fmt(r.stddev) << ',' << r.n << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sidecar(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& entries) {
  auto out = open_out(path);
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  const auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "rep" || header[1] != "t" ||
      header[2] != "cum_regret")
    throw std::runtime_error("unexpected trace header in " + path);
  const bool has_aux = header.size() == 4;
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != header.size())
      throw std::runtime_error("ragged row in " + path);
    TraceRow r;
    r.replication = std::stoi(f[0]);
    r.t = std::stoll(f[1]);
    r.cum_regret = std::stod(f[2]);
    r.has_aux = has_aux;
    if (has_aux) r.aux = std::stod(f[3]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  if (line != "T,checkpoint,mean,std,n")
    throw std::runtime_error("unexpected summary header in " + path);
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 5) throw std::runtime_error("ragged row in " + path);
    rows.push_back({std::stoll(f[0]), std::stoll(f[1]), std::stod(f[2]),
                    std::stod(f[3]), std::stoi(f[4])});
  }
  return rows;
}

}  // namespace fpb
