#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace openqb::app {

std::string trim(const std::string& s)
{
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_decimal(const std::string& s)
{
    const std::string t = trim(s);
    if (t.empty()) throw ConfigError("empty number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) throw ConfigError("not a decimal literal: '" + t + "'");
    // strtod also accepts hex, inf and nan; the format does not
    for (char c : t)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E'))
            throw ConfigError("not a decimal literal: '" + t + "'");
    return v;
}

std::string fmt_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

bool valid_path(const std::string& k)
{
    if (k.empty() || k.front() == '.' || k.back() == '.') return false;
    for (size_t i = 0; i < k.size(); ++i) {
        const char c = k[i];
        if (c == '.' && k[i - 1] == '.') return false;
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
}

std::string strip_comment(const std::string& line)
{
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source)
{
    Config c;
    c.source_ = source;
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_path(section)) fail("bad section name '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_path(key)) fail("bad key '" + key + "'");
        if (value.empty()) fail("missing value for '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        if (c.has(full)) fail("duplicate key '" + full + "' (first set on line " + std::to_string(c.entries_[full].line) + ")");
        c.entries_[full] = {value, lineno};
    }
    return c;
}

Config Config::load(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

void Config::set_assignment(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (!valid_path(key)) throw ConfigError("bad key '" + key + "'");
    if (value.empty()) throw ConfigError("missing value for '" + key + "'");
    set(key, value);
}

void Config::set(const std::string& key, const std::string& value, int line)
{
    entries_[key] = {value, line};
}

std::string Config::where(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end() || it->second.line == 0) return key;
    return source_ + ":" + std::to_string(it->second.line) + ": " + key;
}

std::string Config::str(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key " + key);
    return it->second.value;
}

double Config::num(const std::string& key) const
{
    try {
        return parse_decimal(str(key));
    } catch (const ConfigError& e) {
        throw ConfigError(where(key) + ": " + e.what());
    }
}

int Config::integer(const std::string& key) const
{
    const double v = num(key);
    if (v != static_cast<double>(static_cast<long>(v)) || std::abs(v) > 1e9)
        throw ConfigError(where(key) + ": expected an integer");
    return static_cast<int>(v);
}

bool Config::boolean(const std::string& key) const
{
    const std::string v = str(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where(key) + ": expected true or false");
}

std::vector<std::string> Config::list(const std::string& key) const
{
    std::vector<std::string> out;
    for (auto& s : split(str(key), ','))
        if (!s.empty()) out.push_back(s);
    return out;
}

std::string Config::dump() const
{
    std::ostringstream out;
    // top-level keys must precede every section header
    for (const auto& [key, e] : entries_)
        if (key.find('.') == std::string::npos) out << key << " = " << e.value << "\n";
    std::string current;
    for (const auto& [key, e] : entries_) {
        const auto dot = key.rfind('.');
        if (dot == std::string::npos) continue;
        const std::string sec = key.substr(0, dot);
        if (sec != current) {
            out << (out.tellp() > 0 ? "\n" : "") << "[" << sec << "]\n";
            current = sec;
        }
        out << key.substr(dot + 1) << " = " << e.value << "\n";
    }
    return out.str();
}

}  // namespace openqb::app
