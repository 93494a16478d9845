// Reports: verb, input hashes, verdicts, witnesses and deterministic work
// counters. Byte-identical across runs with identical inputs; wall-clock
// time never enters the serialization.

#ifndef XMODKIT_IO_REPORT_HPP_
#define XMODKIT_IO_REPORT_HPP_

#include <iostream>

#include "xmodkit/io/documents.hpp"

namespace xmodkit::io {

struct Report {
  std::string verb;
  std::map<std::string, std::string> inputs;  // name -> content hash
  struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Verdict> verdicts;
  std::map<std::string, std::string> witnesses;
  std::map<std::string, std::uint64_t> work;

  void input(const std::string& name, const json& doc) { inputs[name] = content_hash(doc); }
  void verdict(const std::string& name, bool pass, const std::string& detail = "") {
    verdicts.push_back({name, pass, detail});
  }
  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  json to_json() const {
    json j;
    j["verb"] = verb;
    j["inputs"] = inputs;
    json vs = json::array();
    for (const auto& v : verdicts) {
      json e;
      e["name"] = v.name;
      e["pass"] = v.pass;
      if (!v.detail.empty()) e["detail"] = v.detail;
      vs.push_back(e);
    }
    j["verdicts"] = vs;
    if (!witnesses.empty()) j["witnesses"] = witnesses;
    if (!work.empty()) j["work"] = work;
    return j;
  }

  std::string to_text() const {
    std::string out = "verb: " + verb + "\n";
    for (const auto& [name, hash] : inputs) out += "input " + name + " " + hash + "\n";
    for (const auto& v : verdicts)
      out += std::string(v.pass ? "pass" : "FAIL") + "  " + v.name +
             (v.detail.empty() ? "" : "  [" + v.detail + "]") + "\n";
    for (const auto& [k, v] : witnesses) out += "witness " + k + ": " + v + "\n";
    for (const auto& [k, v] : work) out += "work " + k + ": " + std::to_string(v) + "\n";
    return out;
  }
};

inline int emit(const Report& r, const std::string& mode) {
  if (mode == "json")
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
  return r.all_pass() ? 0 : 1;
}

}  // namespace xmodkit::io

#endif  // XMODKIT_IO_REPORT_HPP_
