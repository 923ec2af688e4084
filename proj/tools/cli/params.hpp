#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvq::cli {

/// Usage problems: unknown preset, key or malformed value.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric parameters keyed "section.key".
class Params {
public:
    /// Parses key = value lines under [section] headers; '#' starts a comment.
    static Params parse(const std::string& text);
    /// Loads a preset by file path or by name from the preset directory.
    static Params load(const std::string& name_or_path);

    double get(const std::string& key) const;
    /// Resolves a full key or a unique short alias ("L" is channel.length, "r" source.r, ...).
    std::string resolve(const std::string& key) const;
    void set(const std::string& key, double value);
    /// Applies "key=value" with `key` resolved as above.
    void apply_override(const std::string& assignment);

    const std::map<std::string, double>& values() const { return values_; }

private:
    std::map<std::string, double> values_;
};

double parse_number(const std::string& text);

struct Sweep {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log = false;

    std::vector<double> points() const;
};

/// Parses VAR START STOP COUNT.
Sweep parse_sweep(const std::vector<std::string>& tokens, bool log);

}  // namespace cvq::cli
