#pragma once

#include <string>
#include <vector>

namespace cremer::csv {

struct Row {
    std::vector<std::string> fields;
    long line; // 1-based, for error reporting
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

// Minimal strict dialect: comma-delimited, no quoting (none of our schemas
// ever embed commas), header row required, every row must match the header
// width. Throws IoError / ParseError.
Table read_csv(const std::string& path);

// Shortest round-trip formatting via to_chars; parse(format(x)) == x.
std::string format_double(double x);

// Strict full-string parse. Throws ParseError (line used in the message).
double parse_double(const std::string& s, long line);
long long parse_int(const std::string& s, long line);

// Writes to "<path>.tmp" then renames, so readers never see partial output
// and failed runs leave no file behind.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace cremer::csv
