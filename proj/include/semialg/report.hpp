#pragma once

// Deterministic command reports. Text and JSON renderings are byte-identical
// across runs for fixed flags and seed; wall-clock timings are collected but
// only emitted when explicitly requested.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace semialg {

struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json findings = nlohmann::json::object();
    std::vector<std::pair<std::string, bool>> verdicts;
    double elapsed_ms = 0.0;
    std::uint64_t seed = 0;
    bool include_timings = false;

    bool all_pass() const {
        for (const auto& [name, ok] : verdicts)
            if (!ok) return false;
        return true;
    }

    int exit_code() const { return all_pass() ? 0 : 1; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["report_version"] = 1;
        j["command"] = command;
        j["inputs"] = inputs;
        j["findings"] = findings;
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& [name, ok] : verdicts) {
            nlohmann::json v;
            v["name"] = name;
            v["pass"] = ok;
            vs.push_back(std::move(v));
        }
        j["verdicts"] = std::move(vs);
        j["seed"] = seed;
        if (include_timings) j["elapsed_ms"] = elapsed_ms;
        return j;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "== " << command << " ==\n";
        if (!inputs.empty()) os << "inputs: " << inputs.dump() << "\n";
        if (!findings.empty()) {
            for (auto it = findings.begin(); it != findings.end(); ++it)
                os << it.key() << ": "
                   << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
                   << "\n";
        }
        for (const auto& [name, ok] : verdicts)
            os << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!verdicts.empty())
            os << (all_pass() ? "all verdicts pass" : "some verdicts FAILED") << "\n";
        if (include_timings) os << "elapsed_ms: " << elapsed_ms << "\n";
        return os.str();
    }
};

}  // namespace semialg
