#include "cremer/csv.hpp"

#include "cremer/errors.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cremer::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    Table t;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (t.header.empty()) {
            t.header = split_line(line);
            continue;
        }
        Row row{split_line(line), lineno};
        if (row.fields.size() != t.header.size())
            throw ParseError("expected " + std::to_string(t.header.size()) + " fields, got " +
                                 std::to_string(row.fields.size()),
                             lineno);
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw ParseError("file '" + path + "' has no header row", 0);
    return t;
}

std::string format_double(double x) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

double parse_double(const std::string& s, long line) {
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ParseError("bad numeric value '" + s + "'", line);
    return v;
}

long long parse_int(const std::string& s, long line) {
    long long v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ParseError("bad integer value '" + s + "'", line);
    return v;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw IoError("short write to '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

} // namespace cremer::csv
