// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace kvn {

namespace {
std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}
}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config c;
    c.origin_ = origin;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (auto k = s.find_first_of("#;"); k != std::string::npos) s.erase(k);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                throw ConfigError(origin + ":" + std::to_string(line) + ": malformed section header '" + trim(raw) + "'");
            section = trim(s.substr(1, s.size() - 2));
            c.data_[section];
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line) + ": expected 'key = value', got '" + s + "'");
        std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line) + ": empty key");
        auto& sec = c.data_[section];
        if (sec.count(key))
            throw ConfigError(origin + ":" + std::to_string(line) + ": duplicate key '" + key + "' (first on line " +
                              std::to_string(sec[key].line) + ")");
        sec[key] = {value, line};
    }
    return c;
}

bool Config::empty() const {
    return std::all_of(data_.begin(), data_.end(), [](const auto& s) { return s.second.empty(); });
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key);
}

bool Config::has_section(const std::string& section) const { return data_.count(section) > 0; }

std::string Config::where(const std::string& section, const std::string& key) const {
    const auto& e = data_.at(section).at(key);
    return origin_ + ":" + std::to_string(e.line) + ": field '" + (section.empty() ? "" : section + ".") + key + "'";
}

std::string Config::get_string(const std::string& section, const std::string& key, const std::string& def) const {
    return has(section, key) ? data_.at(section).at(key).value : def;
}

double Config::get_double(const std::string& section, const std::string& key, double def) const {
    if (!has(section, key)) return def;
    const std::string& v = data_.at(section).at(key).value;
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(where(section, key) + ": expected a number, got '" + v + "'");
    return out;
}

int Config::get_int(const std::string& section, const std::string& key, int def) const {
    if (!has(section, key)) return def;
    const std::string& v = data_.at(section).at(key).value;
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(where(section, key) + ": expected an integer, got '" + v + "'");
    return out;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool def) const {
    if (!has(section, key)) return def;
    std::string v = data_.at(section).at(key).value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError(where(section, key) + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& section, const std::string& key,
                                          const std::vector<std::string>& def) const {
    if (!has(section, key)) return def;
    std::vector<std::string> out;
    std::stringstream ss(data_.at(section).at(key).value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key,
                                        const std::vector<double>& def) const {
    if (!has(section, key)) return def;
    std::vector<double> out;
    for (const auto& s : get_list(section, key, {})) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw ConfigError(where(section, key) + ": expected a list of numbers, got item '" + s + "'");
        out.push_back(v);
    }
    return out;
}

void Config::check_known(const std::string& section, const std::set<std::string>& known) const {
    auto it = data_.find(section);
    if (it == data_.end()) return;
    for (const auto& [k, e] : it->second)
        if (!known.count(k)) {
            std::string list;
            for (const auto& s : known) list += (list.empty() ? "" : ", ") + s;
            throw ConfigError(where(section, k) + ": unknown key (expected one of: " + list + ")");
        }
}

std::string version_tag() {
#ifdef KVNLAB_VERSION
    return std::string("kvnlab ") + KVNLAB_VERSION;
#else
    return "kvnlab";
#endif
}

std::string fmt17(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), ncol_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot write '" + path + "'");
    out_ << "# " << version_tag() << "\n";
    for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

CsvWriter& CsvWriter::cell(const std::string& s) {
    out_ << (cur_++ ? "," : "");
    if (s.find_first_of(",\"\n") != std::string::npos) {
        out_ << '"';
        for (char ch : s) out_ << (ch == '"' ? "\"\"" : std::string(1, ch));
        out_ << '"';
    } else {
        out_ << s;
    }
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(fmt17(v)); }
CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
    if (cur_ != ncol_) throw std::logic_error("CSV row has " + std::to_string(cur_) + " cells, expected " + std::to_string(ncol_));
    out_ << "\n";
    cur_ = 0;
}

void Summary::check(const std::string& name, bool pass, double residual, const std::string& detail) {
    std::string s = std::string(pass ? "PASS " : "FAIL ") + name + " residual=" + fmt17(residual);
    if (!detail.empty()) s += " " + detail;
    lines_.push_back(s);
    if (!pass) ++failures_;
}

void Summary::note(const std::string& line) { lines_.push_back("NOTE " + line); }

void Summary::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "# " << version_tag() << "\n";
    for (const auto& l : lines_) out << l << "\n";
    out << (failures_ ? "RESULT FAIL " + std::to_string(failures_) + " check(s) failed" : std::string("RESULT PASS")) << "\n";
}

}  // namespace kvn
