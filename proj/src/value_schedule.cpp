#include "fpb/env/value_schedule.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fpb {

int block_context(long long t, int blocks, long long horizon) {
  if (t < 1 || t > horizon) throw std::invalid_argument("round outside horizon");
  if (blocks < 1 || blocks > horizon)
    throw std::invalid_argument("blocks must lie in [1, horizon]");
  long long base = horizon / blocks;
  int m = int(std::min<long long>((t - 1) / base + 1, blocks));
  return blocks + 1 - m;
}

ValueSchedule ValueSchedule::iid_uniform() {
  ValueSchedule s;
  s.kind_ = Kind::kIidUniform;
  return s;
}

ValueSchedule ValueSchedule::constant(double v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument("constant value outside [0,1]");
  ValueSchedule s;
  s.kind_ = Kind::kConstant;
  s.constant_ = v;
  return s;
}

ValueSchedule ValueSchedule::decreasing_blocks(int blocks, long long horizon) {
  if (blocks < 1 || horizon < blocks)
    throw std::invalid_argument("decreasing_blocks needs 1 <= blocks <= horizon");
  ValueSchedule s;
  s.kind_ = Kind::kDecreasingBlocks;
  s.blocks_ = blocks;
  s.horizon_ = horizon;
  return s;
}

ValueSchedule ValueSchedule::explicit_list(std::vector<double> values) {
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("explicit value outside [0,1]");
  ValueSchedule s;
  s.kind_ = Kind::kExplicit;
  s.values_ = std::move(values);
  return s;
}

ValueSchedule ValueSchedule::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open value file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  auto s = explicit_list(std::move(values));
  s.kind_ = Kind::kFile;
  s.path_ = path;
  return s;
}

ValueSchedule ValueSchedule::parse(const std::string& spec, long long horizon) {
  if (spec == "iid_uniform") return iid_uniform();
  if (spec == "decreasing") return decreasing_blocks(int(horizon), horizon);
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "constant") return constant(std::stod(arg));
  if (name == "blocks") return decreasing_blocks(std::stoi(arg), horizon);
  if (name == "file") return from_file(arg);
  if (name == "explicit") {
    std::vector<double> vals;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    return explicit_list(std::move(vals));
  }
  throw std::invalid_argument("unknown value schedule: " + spec);
}

std::string ValueSchedule::spec_string() const {
  switch (kind_) {
    case Kind::kIidUniform:
      return "iid_uniform";
    case Kind::kConstant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "constant:%.17g", constant_);
      return buf;
    }
    case Kind::kDecreasingBlocks:
      return "blocks:" + std::to_string(blocks_);
    case Kind::kExplicit: {
      std::string s = "explicit:";
      for (size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", values_[i]);
        s += buf;
      }
      return s;
    }
    case Kind::kFile:
      return "file:" + path_;
  }
  return "iid_uniform";
}

void ValueSchedule::reset(std::uint64_t seed) {
  rng_.seed(seed);
  t_ = 0;
}

double ValueSchedule::next() {
  ++t_;
  switch (kind_) {
    case Kind::kIidUniform:
      return uniform01(rng_);
    case Kind::kConstant:
      return constant_;
    case Kind::kDecreasingBlocks:
      return double(block_context(t_, blocks_, horizon_)) / blocks_;
    case Kind::kExplicit:
    case Kind::kFile:
      if (t_ > static_cast<long long>(values_.size()))
        throw std::out_of_range("value schedule exhausted at round " +
                                std::to_string(t_));
      return values_[t_ - 1];
  }
  return 0.0;
}

}  // namespace fpb
