#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "fifo/frontend/parse.hpp"
#include "fifo/frontend/trace.hpp"
#include "fifo/model.hpp"

namespace fifo::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test input " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string sample_path(const std::string& name) { return std::string(FIFO_SAMPLES_DIR) + "/" + name; }

inline System sample(const std::string& name) { return parse_system(read_text(sample_path(name + ".fifo"))); }

inline Execution sample_trace(const System& s, const std::string& name) {
  return parse_trace(s, read_text(sample_path(name)));
}

inline Execution trace(const System& s, std::string_view text) { return parse_trace(s, text); }

}  // namespace fifo::testing
