// Experiment configuration: a flat key = value file format with a nested
// radius-law strings, an environment-variable seed default, and full echo into
// every output artifact so runs reproduce byte-for-byte.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolsim/radius_law.hpp"

namespace boolsim {

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what),
          field_name(field) {}
    std::string field_name;
};

// key = value lines; '#' comments; later keys override earlier ones.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_text(const std::string& text,
                                     const std::string& origin = "<text>");

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    std::vector<std::string> keys() const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double dflt) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
    bool get_bool(const std::string& key, bool dflt) const;
    RadiusLaw get_law(const std::string& key) const;
    RadiusLaw get_law(const std::string& key, const RadiusLaw& dflt) const;

    // Canonical text form: sorted keys, one per line. Reparsing reproduces
    // the config exactly.
    std::string echo() const;

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
    std::string origin_ = "<empty>";
};

// fixed(r) | uniform(a,b) | exponential(mean) | pareto(tau,xmin) |
// zeromix(p0, <law>); whitespace-insensitive.
RadiusLaw parse_radius_law(const std::string& spec);

} // namespace boolsim
