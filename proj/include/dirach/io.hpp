#pragma once

// Serialization: binary field files, JSON reports and metadata, CSV tables,
// and the flat key=value run configuration shared by the CLI subcommands.
//
// Field file layout (little-endian host assumed):
//   magic "DRCH" | u32 version | u32 d | u32 N | f64 L | u32 n | u8 space
//   then n * N^d complex samples as (f64 re, f64 im), component-major.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirach/solver.hpp"
#include "dirach/verify.hpp"

namespace dirach {

using ordered_json = nlohmann::ordered_json;

inline constexpr char kFieldMagic[4] = {'D', 'R', 'C', 'H'};
inline constexpr std::uint32_t kFieldVersion = 1;

inline void write_field(const std::string& path, const SpinorField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field: cannot open " + path);
    out.write(kFieldMagic, 4);
    auto u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    u32(kFieldVersion);
    u32(static_cast<std::uint32_t>(f.grid.d));
    u32(static_cast<std::uint32_t>(f.grid.N));
    out.write(reinterpret_cast<const char*>(&f.grid.L), 8);
    u32(static_cast<std::uint32_t>(f.n));
    const std::uint8_t space = (f.space == Space::frequency) ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&space), 1);
    for (const cplx& v : f.data) {
        const double re = v.real(), im = v.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
    if (!out) throw std::runtime_error("write_field: write failed on " + path);
}

inline SpinorField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kFieldMagic, 4) != 0)
        throw std::runtime_error("read_field: bad magic in " + path);
    auto u32 = [&]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    const std::uint32_t version = u32();
    if (version != kFieldVersion) throw std::runtime_error("read_field: unsupported version");
    const int d = static_cast<int>(u32());
    const int N = static_cast<int>(u32());
    double L = 0;
    in.read(reinterpret_cast<char*>(&L), 8);
    const int n = static_cast<int>(u32());
    std::uint8_t space = 0;
    in.read(reinterpret_cast<char*>(&space), 1);
    if (!in || d < 1 || d > 8 || N < 2 || n < 1 || !(L > 0))
        throw std::runtime_error("read_field: corrupt header in " + path);

    SpinorField f(SpectralGrid(d, N, L), n,
                  space ? Space::frequency : Space::physical);
    for (cplx& v : f.data) {
        double re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), 8);
        in.read(reinterpret_cast<char*>(&im), 8);
        v = cplx(re, im);
    }
    if (!in) throw std::runtime_error("read_field: truncated data in " + path);
    return f;
}

inline ordered_json field_metadata(const SpinorField& f) {
    ordered_json j;
    j["d"] = f.grid.d;
    j["N"] = f.grid.N;
    j["L"] = f.grid.L;
    j["components"] = f.n;
    j["space"] = (f.space == Space::frequency) ? "frequency" : "physical";
    j["l2_norm"] = l2_norm(f);
    return j;
}

// ---- verification reports ----------------------------------------------

inline ordered_json report_to_json(const VerificationReport& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["lemma"] = r.lemma;
    j["d"] = r.d;
    j["gamma"] = r.gamma;
    j["params"] = r.params;
    j["negative_probe"] = r.negative_probe;
    j["ratios"] = r.ratios;
    j["max_ratio"] = r.max_ratio;
    j["median_ratio"] = r.median_ratio;
    j["refined_max"] = r.refined_max;
    j["drift"] = r.drift;
    j["pass"] = r.pass;
    return j;
}

inline ordered_json reports_to_json(const std::vector<VerificationReport>& reports,
                                    const VerifyOptions& opt, const std::string& suite) {
    ordered_json j;
    j["suite"] = suite;
    j["seed"] = opt.seed;
    j["profile"] = opt.full ? "full" : "quick";
    j["spread_bound"] = opt.spread_bound;
    j["drift_bound"] = opt.drift_bound;
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    j["all_pass"] = all_pass;
    j["reports"] = ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(report_to_json(r));
    return j;
}

inline std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "suite,lemma,d,gamma,negative_probe,member,ratio\n";
    for (const auto& r : reports)
        for (std::size_t i = 0; i < r.ratios.size(); ++i) {
            std::ostringstream v;
            v.precision(17);
            v << r.ratios[i];
            out << r.suite << ',' << r.lemma << ',' << r.d << ',' << r.gamma << ','
                << (r.negative_probe ? 1 : 0) << ',' << i << ',' << v.str() << '\n';
        }
    return out.str();
}

inline std::string trajectory_norms_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,norm\n";
    out.precision(17);
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out << traj.times[i] << ','
            << (i < traj.norms.size() ? traj.norms[i] : 0.0) << '\n';
    return out.str();
}

// ---- flat key=value configuration ---------------------------------------

// Keys are declared up front; unknown keys are rejected so typos cannot
// silently fall back to defaults.  Provenance records where each value came
// from, and the echo() output alone suffices to reproduce a run.
class RunConfig {
  public:
    explicit RunConfig(std::set<std::string> allowed) : allowed_(std::move(allowed)) {}

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("config: cannot open " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto strip = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                if (a == std::string::npos) return std::string();
                const auto b = s.find_last_not_of(" \t\r");
                return s.substr(a, b - a + 1);
            };
            if (strip(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config: missing '=' at " + path + ":" +
                                         std::to_string(lineno));
            set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)), "file");
        }
    }

    void set(const std::string& key, const std::string& value, const std::string& origin) {
        if (!allowed_.count(key)) throw std::runtime_error("config: unknown key '" + key + "'");
        values_[key] = value;
        provenance_[key] = origin;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }
    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(it->second, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != it->second.size())
            throw std::runtime_error("config: '" + key + "' is not a number");
        return v;
    }
    int get_int(const std::string& key, int fallback) const {
        const double v = get_double(key, fallback);
        const int i = static_cast<int>(v);
        if (i != v) throw std::runtime_error("config: '" + key + "' is not an integer");
        return i;
    }

    // fully resolved configuration with provenance, for output metadata
    ordered_json echo() const {
        ordered_json j;
        for (const auto& [key, value] : values_) {
            j[key]["value"] = value;
            j[key]["origin"] = provenance_.at(key);
        }
        return j;
    }

  private:
    std::set<std::string> allowed_;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> provenance_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed on " + path);
}

}  // namespace dirach
