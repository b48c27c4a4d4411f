#pragma once

// Machine-readable reports: command echo, input digest, payload, hypothesis flags, timing.

#include <ainf/graded_algebra.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace ainf {

using ojson = nlohmann::ordered_json;

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

struct Report {
  std::string command;
  std::string input_digest;  // empty when there is no input file
  ojson result = ojson::object();
  std::vector<std::string> hypotheses;
  double timing_ms = 0;

  [[nodiscard]] ojson to_json() const {
    ojson j;
    j["command"] = command;
    j["input_digest"] = input_digest.empty() ? ojson(nullptr) : ojson(input_digest);
    j["result"] = result;
    j["hypotheses"] = hypotheses;
    j["timing_ms"] = timing_ms;
    return j;
  }
};

class Stopwatch {
 public:
  [[nodiscard]] double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ojson vec_json(const std::vector<BasisElement>& basis, const Vec& v) {
  ojson out = ojson::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[basis[i].name] = v[i].to_string();
  return out;
}

inline ojson subspace_json(const std::vector<BasisElement>& basis, const Subspace& s) {
  ojson out = ojson::array();
  for (const auto& v : s.basis()) out.push_back(format_element(basis, v));
  return out;
}

template <class Map>
ojson degree_map_json(const Map& m) {
  ojson out = ojson::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

}  // namespace ainf
