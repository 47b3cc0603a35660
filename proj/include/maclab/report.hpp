#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace maclab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct SliceRecord {
  int degree = 0;
  int z_weight = 0;
  int s_weight = 0;
  long dim = 0;
  long cohom_dim = 0;
  long expected = 0;
};

/// Outcome of one verification run.
struct Report {
  std::string check;
  Json params = Json::object();
  std::string status = "PASS"; // PASS, FAIL or CAPACITY
  std::vector<SliceRecord> per_slice;
  Json details = Json::object();
  Json first_mismatch; // null unless FAIL
  double wall_time_ms = 0;

  bool passed() const { return status == "PASS"; }
  /// Marks the run failed; only the first certificate is kept.
  void fail(Json certificate);
  /// Folds a sub-report in: its slices and details under name, its failure if any.
  void absorb(const std::string& name, const Report& sub);

  Json to_json() const;
  std::string text() const;
};

/// Hex FNV-1a hash of the check name and parameters.
std::string input_hash(const std::string& check, const Json& params);

/// Removes timing fields everywhere in the tree.
Json strip_timing(Json j);

struct GoldenResult {
  bool match = false;
  std::vector<std::string> drift; // differing JSON paths, or "absent"
};

std::string golden_file_name(const Json& report);
GoldenResult golden_compare(const Json& report, const std::string& corpus_dir);
void golden_store(const Json& report, const std::string& corpus_dir);

} // namespace maclab
