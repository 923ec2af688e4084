#include "params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef CVQ_PRESET_DIR
#define CVQ_PRESET_DIR "tools/presets"
#endif

namespace cvq::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> a{
        {"L", "channel.length"}, {"mu", "channel.mu"}, {"r", "source.r"}, {"n", "source.n"},
        {"G", "teleport.gain"},  {"tau", "distill.tau"}, {"eta1", "bifreq.eta1"}, {"d", "satellite.d"},
    };
    return a;
}

}  // namespace

double parse_number(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw usage_error("not a number: '" + text + "'");
    }
    if (used != t.size()) throw usage_error("not a number: '" + text + "'");
    return v;
}

Params Params::parse(const std::string& text) {
    Params p;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw usage_error("preset line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw usage_error("preset line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        p.values_[section.empty() ? key : section + "." + key] = parse_number(line.substr(eq + 1));
    }
    return p;
}

Params Params::load(const std::string& name_or_path) {
    std::ifstream f(name_or_path);
    if (!f) f.open(std::string(CVQ_PRESET_DIR) + "/" + name_or_path + ".ini");
    if (!f) throw usage_error("unknown preset: " + name_or_path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
}

std::string Params::resolve(const std::string& key) const {
    if (values_.count(key)) return key;
    if (const auto it = aliases().find(key); it != aliases().end() && values_.count(it->second)) return it->second;
    std::string match;
    for (const auto& [k, v] : values_) {
        const auto dot = k.find('.');
        if (dot != std::string::npos && k.substr(dot + 1) == key) {
            if (!match.empty()) throw usage_error("ambiguous parameter '" + key + "': " + match + ", " + k);
            match = k;
        }
    }
    if (match.empty()) throw usage_error("unknown parameter: " + key);
    return match;
}

double Params::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw usage_error("preset lacks parameter: " + key);
    return it->second;
}

void Params::set(const std::string& key, double value) { values_[resolve(key)] = value; }

void Params::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw usage_error("--set expects key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), parse_number(assignment.substr(eq + 1)));
}

std::vector<double> Sweep::points() const {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        xs[i] = log ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start))) : start + t * (stop - start);
    }
    xs.back() = stop;
    return xs;
}

Sweep parse_sweep(const std::vector<std::string>& tokens, bool log) {
    if (tokens.size() != 4) throw usage_error("--sweep expects VAR START STOP COUNT");
    Sweep s;
    s.variable = tokens[0];
    s.start = parse_number(tokens[1]);
    s.stop = parse_number(tokens[2]);
    const double c = parse_number(tokens[3]);
    if (c != std::floor(c) || c < 2) throw usage_error("--sweep COUNT must be an integer >= 2");
    s.count = static_cast<int>(c);
    s.log = log;
    if (!(s.start < s.stop)) throw usage_error("--sweep requires START < STOP");
    if (log && !(s.start > 0.0)) throw usage_error("--log sweep requires START > 0");
    return s;
}

}  // namespace cvq::cli
