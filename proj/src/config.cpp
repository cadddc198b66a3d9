#include "boolsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace boolsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Recursive-descent law parser over a whitespace-stripped spec string.
struct LawParser {
    std::string s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("radius law '" + s + "': " + what +
                                    " at position " + std::to_string(pos));
    }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string ident() {
        std::size_t start = pos;
        while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a law name");
        return s.substr(start, pos - start);
    }
    double number() {
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '.' || s[pos] == '-' || s[pos] == '+' ||
                                  s[pos] == 'e' || s[pos] == 'E'))
            ++pos;
        if (pos == start) fail("expected a number");
        try {
            return std::stod(s.substr(start, pos - start));
        } catch (const std::exception&) {
            fail("malformed number");
        }
    }

    RadiusLaw law() {
        std::string name = ident();
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        expect('(');
        RadiusLaw out = RadiusLaw::fixed(1.0);
        if (name == "fixed") {
            out = RadiusLaw::fixed(number());
        } else if (name == "uniform") {
            double a = number();
            expect(',');
            out = RadiusLaw::uniform(a, number());
        } else if (name == "exponential" || name == "exp") {
            out = RadiusLaw::exponential(number());
        } else if (name == "pareto") {
            double tau = number();
            expect(',');
            out = RadiusLaw::pareto(tau, number());
        } else if (name == "zeromix") {
            double p0 = number();
            expect(',');
            out = RadiusLaw::zero_mixture(p0, law());
        } else {
            fail("unknown law '" + name + "'");
        }
        expect(')');
        return out;
    }
};

} // namespace

RadiusLaw parse_radius_law(const std::string& spec) {
    std::string compact;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    LawParser p{compact};
    RadiusLaw law = p.law();
    if (p.pos != compact.size())
        throw std::invalid_argument("radius law '" + spec + "': trailing input");
    return law;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text,
                                          const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no),
                              "expected 'key = value', got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no), "empty key");
        cfg.values_[key] = value;
        cfg.lines_[key] = line_no;
    }
    return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
    lines_[key] = 0;
}

bool KeyValueConfig::has(const std::string& key) const {
    return values_.count(key) != 0;
}

std::vector<std::string> KeyValueConfig::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing");
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& dflt) const {
    auto it = values_.find(key);
    return it == values_.end() ? dflt : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    std::string v = get_string(key);
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + v + "'");
    }
}

double KeyValueConfig::get_double(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) const {
    std::string v = get_string(key);
    try {
        std::size_t used = 0;
        long long i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + v + "'");
    }
}

std::int64_t KeyValueConfig::get_int(const std::string& key,
                                     std::int64_t dflt) const {
    return has(key) ? get_int(key) : dflt;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t dflt) const {
    if (!has(key)) return dflt;
    std::int64_t v = get_int(key);
    if (v < 0) throw ConfigError(key, "must be non-negative");
    return static_cast<std::uint64_t>(v);
}

bool KeyValueConfig::get_bool(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    std::string v = get_string(key);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key, "not a boolean: '" + v + "'");
}

RadiusLaw KeyValueConfig::get_law(const std::string& key) const {
    try {
        return parse_radius_law(get_string(key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

RadiusLaw KeyValueConfig::get_law(const std::string& key,
                                  const RadiusLaw& dflt) const {
    return has(key) ? get_law(key) : dflt;
}

std::string KeyValueConfig::echo() const {
    std::ostringstream os;
    for (const auto& [k, v] : values_) os << k << " = " << v << "\n";
    return os.str();
}

} // namespace boolsim
