#include "sos/instance_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sos/error.hpp"

namespace sos {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) {
      throw ParseError(std::string("unknown field '") + it.key() + "' in " + where);
    }
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "' in " + where);
  return *it;
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json root;
  root["machines"] = inst.machines();
  json jobs = json::array();
  for (const auto& j : inst.jobs()) {
    jobs.push_back({{"id", j.id}, {"weight", j.weight}, {"release", j.release}});
  }
  root["jobs"] = std::move(jobs);
  json dists = json::array();
  for (const auto& row : inst.dists()) {
    json r = json::array();
    for (const auto& d : row) {
      auto p = d.params();
      r.push_back({{"kind", std::string(to_string(d.kind()))},
                   {"params", std::vector<double>(p.begin(), p.end())}});
    }
    dists.push_back(std::move(r));
  }
  root["dists"] = std::move(dists);
  return root.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("instance must be a JSON object");
  reject_unknown(root, {"machines", "jobs", "dists"}, "instance");

  const auto& m = require(root, "machines", "instance");
  if (!m.is_number_integer() || m.get<long long>() < 1) {
    throw ParseError("machines must be a positive integer");
  }
  const auto machines = static_cast<std::size_t>(m.get<long long>());

  const auto& jobs_json = require(root, "jobs", "instance");
  if (!jobs_json.is_array()) throw ParseError("jobs must be an array");
  std::vector<Job> jobs;
  for (const auto& jj : jobs_json) {
    if (!jj.is_object()) throw ParseError("each job must be an object");
    reject_unknown(jj, {"id", "weight", "release"}, "job");
    const auto& id = require(jj, "id", "job");
    if (!id.is_number_integer()) throw ParseError("job id must be an integer");
    jobs.push_back({id.get<int>(), number(require(jj, "weight", "job"), "weight"),
                    number(require(jj, "release", "job"), "release")});
  }

  const auto& dists_json = require(root, "dists", "instance");
  if (!dists_json.is_array()) throw ParseError("dists must be an array of rows");
  std::vector<std::vector<Distribution>> dists;
  for (const auto& row : dists_json) {
    if (!row.is_array()) throw ParseError("each dists row must be an array");
    std::vector<Distribution> r;
    for (const auto& dj : row) {
      if (!dj.is_object()) throw ParseError("each distribution must be an object");
      reject_unknown(dj, {"kind", "params"}, "distribution");
      const auto& kind = require(dj, "kind", "distribution");
      if (!kind.is_string()) throw ParseError("distribution kind must be a string");
      const auto& params = require(dj, "params", "distribution");
      if (!params.is_array()) throw ParseError("distribution params must be an array");
      std::vector<double> p;
      for (const auto& v : params) p.push_back(number(v, "distribution parameter"));
      r.push_back(Distribution::from_params(dist_kind_from_string(kind.get<std::string>()), p));
    }
    dists.push_back(std::move(r));
  }
  return Instance(machines, std::move(jobs), std::move(dists));
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open instance file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void write_text_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error(Errc::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace sos
