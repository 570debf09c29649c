#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace openqb::app {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat view of a nested key-value file. Keys are dotted paths ("params.g").
// Grammar (see docs/config.md):
//   line    := blank | comment | section | entry
//   section := '[' path ']'
//   entry   := key '=' value
//   comment := '#' ...
class Config {
public:
    struct Entry {
        std::string value;
        int line = 0;  // 0 when set programmatically
    };

    static Config parse(const std::string& text, const std::string& source = "<string>");
    static Config load(const std::string& path);

    // "key=value" with a dotted key, as given on the command line
    void set_assignment(const std::string& assignment);
    void set(const std::string& key, const std::string& value, int line = 0);
    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    void erase(const std::string& key) { entries_.erase(key); }

    std::string str(const std::string& key) const;
    double num(const std::string& key) const;
    int integer(const std::string& key) const;
    bool boolean(const std::string& key) const;
    std::vector<std::string> list(const std::string& key) const;

    const std::map<std::string, Entry>& entries() const { return entries_; }
    const std::string& source() const { return source_; }
    std::string where(const std::string& key) const;

    // canonical text form, one section per prefix
    std::string dump() const;

private:
    std::map<std::string, Entry> entries_;
    std::string source_ = "<string>";
};

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
double parse_decimal(const std::string& s);
std::string fmt_double(double x);  // %.17g

}  // namespace openqb::app
