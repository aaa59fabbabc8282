// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kvn {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value text with [section] headers; '#' and ';' start comments.
// Keys before any header belong to section "". Values keep their line number for diagnostics.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool empty() const;
    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    std::string get_string(const std::string& section, const std::string& key, const std::string& def) const;
    double get_double(const std::string& section, const std::string& key, double def) const;
    int get_int(const std::string& section, const std::string& key, int def) const;
    bool get_bool(const std::string& section, const std::string& key, bool def) const;
    // comma-separated
    std::vector<std::string> get_list(const std::string& section, const std::string& key,
                                      const std::vector<std::string>& def) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                    const std::vector<double>& def) const;

    // throws on keys of `section` outside `known`
    void check_known(const std::string& section, const std::set<std::string>& known) const;

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string where(const std::string& section, const std::string& key) const;
    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> data_;
};

std::string version_tag();
// 17 significant digits, '.' decimal point
std::string fmt17(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    CsvWriter& cell(const std::string& s);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    void end_row();

private:
    std::ofstream out_;
    size_t ncol_ = 0, cur_ = 0;
};

class Summary {
public:
    void check(const std::string& name, bool pass, double residual, const std::string& detail = "");
    void note(const std::string& line);
    bool all_pass() const { return failures_ == 0; }
    int failures() const { return failures_; }
    void write(const std::string& path) const;
    const std::vector<std::string>& lines() const { return lines_; }

private:
    std::vector<std::string> lines_;
    int failures_ = 0;
};

}  // namespace kvn
