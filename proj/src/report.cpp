#include "maclab/report.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace maclab {

void Report::fail(Json certificate)
{
  if (status == "FAIL")
    return;
  status = "FAIL";
  first_mismatch = std::move(certificate);
}

void Report::absorb(const std::string& name, const Report& sub)
{
  per_slice.insert(per_slice.end(), sub.per_slice.begin(), sub.per_slice.end());
  Json d = sub.details;
  d["status"] = sub.status;
  details[name] = d;
  if (sub.status == "CAPACITY" && status == "PASS") {
    status = "CAPACITY";
    first_mismatch = sub.first_mismatch;
  } else if (sub.status == "FAIL") {
    Json c = sub.first_mismatch;
    if (c.is_object())
      c["part"] = name;
    fail(c);
  }
}

Json Report::to_json() const
{
  Json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["check"] = check;
  j["params"] = params;
  j["input_hash"] = input_hash(check, params);
  j["status"] = status;
  Json rows = Json::array();
  for (const SliceRecord& r : per_slice)
    rows.push_back({{"degree", r.degree},
                    {"z_weight", r.z_weight},
                    {"s_weight", r.s_weight},
                    {"dim", r.dim},
                    {"cohom_dim", r.cohom_dim},
                    {"expected", r.expected}});
  j["per_slice"] = rows;
  j["details"] = details;
  j["first_mismatch"] = first_mismatch;
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

std::string Report::text() const
{
  std::ostringstream os;
  os << check << " " << params.dump() << ": " << status << "\n";
  if (!per_slice.empty()) {
    long nonzero = 0;
    for (const auto& r : per_slice)
      nonzero += r.cohom_dim != 0;
    os << "  slices: " << per_slice.size() << " (" << nonzero << " with nonzero cohomology)\n";
  }
  for (const auto& [k, v] : details.items())
    os << "  " << k << ": " << v.dump() << "\n";
  if (!first_mismatch.is_null())
    os << "  first mismatch: " << first_mismatch.dump() << "\n";
  os << "  wall time: " << static_cast<long>(wall_time_ms) << " ms\n";
  return os.str();
}

std::string input_hash(const std::string& check, const Json& params)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : check + "\n" + params.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

Json strip_timing(Json j)
{
  if (j.is_object()) {
    Json out = Json::object();
    for (auto& [k, v] : j.items())
      if (k != "wall_time_ms")
        out[k] = strip_timing(v);
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (auto& v : j)
      out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

namespace {

void diff_paths(const Json& a, const Json& b, const std::string& path, std::vector<std::string>& out)
{
  if (a.type() != b.type()) {
    out.push_back(path.empty() ? "/" : path);
    return;
  }
  if (a.is_object()) {
    for (auto& [k, v] : a.items()) {
      if (!b.contains(k))
        out.push_back(path + "/" + k);
      else
        diff_paths(v, b.at(k), path + "/" + k, out);
    }
    for (auto& [k, v] : b.items())
      if (!a.contains(k))
        out.push_back(path + "/" + k);
    return;
  }
  if (a.is_array()) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      diff_paths(a[i], b[i], path + "/" + std::to_string(i), out);
    if (a.size() != b.size())
      out.push_back(path + "/#size");
    return;
  }
  if (a != b)
    out.push_back(path.empty() ? "/" : path);
}

} // namespace

std::string golden_file_name(const Json& report)
{
  return report.at("check").get<std::string>() + "-" + report.at("input_hash").get<std::string>() + ".json";
}

GoldenResult golden_compare(const Json& report, const std::string& corpus_dir)
{
  GoldenResult r;
  const auto path = std::filesystem::path(corpus_dir) / golden_file_name(report);
  std::ifstream in(path);
  if (!in) {
    r.drift.push_back("absent");
    return r;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string stored = buf.str();
  const Json fresh = strip_timing(report);
  if (stored == fresh.dump(2) + "\n") {
    r.match = true;
    return r;
  }
  Json old;
  try {
    old = Json::parse(stored);
  } catch (const std::exception&) {
    r.drift.push_back("/");
    return r;
  }
  diff_paths(old, fresh, "", r.drift);
  if (r.drift.empty())
    r.drift.push_back("/#formatting");
  return r;
}

void golden_store(const Json& report, const std::string& corpus_dir)
{
  std::filesystem::create_directories(corpus_dir);
  std::ofstream out(std::filesystem::path(corpus_dir) / golden_file_name(report));
  out << strip_timing(report).dump(2) << "\n";
}

} // namespace maclab
