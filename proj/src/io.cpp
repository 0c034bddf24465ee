#include "precis/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "precis/errors.hpp"

namespace precis {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_field(const std::string& field, double& out) {
    const char* begin = field.c_str();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
    if (begin == end) return false;
    // from_chars does not accept "inf"/"nan" spellings consistently; this
    // format never contains them, so reject anything it cannot parse.
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

struct ParsedCsv {
    std::vector<std::vector<double>> rows;
    bool had_header = false;
};

ParsedCsv parse_numeric_csv(const std::string& path, bool allow_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);

    ParsedCsv out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto fields = split_csv_line(line);
        std::vector<double> row(fields.size());
        bool ok = true;
        std::size_t bad_col = 0;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_field(fields[c], row[c])) {
                ok = false;
                bad_col = c + 1;
                break;
            }
        }
        if (!ok) {
            if (allow_header && out.rows.empty() && !out.had_header) {
                out.had_header = true;
                continue;
            }
            throw CsvParseError("cannot parse numeric field in " + path, lineno, bad_col);
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw CsvParseError("inconsistent column count in " + path, lineno,
                                row.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            if (!std::isfinite(row[c]))
                throw CsvParseError("non-finite value in " + path, lineno, c + 1);
        out.rows.push_back(std::move(row));
    }
    if (out.rows.empty()) throw IoError("empty csv: " + path);
    return out;
}

Matrix to_matrix(const ParsedCsv& parsed) {
    Matrix m(parsed.rows.size(), parsed.rows.front().size());
    for (std::size_t i = 0; i < parsed.rows.size(); ++i)
        for (std::size_t j = 0; j < parsed.rows[i].size(); ++j)
            m(i, j) = parsed.rows[i][j];
    return m;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
    return to_matrix(parse_numeric_csv(path, false));
}

SampleData read_sample_csv(const std::string& path) {
    return SampleData(to_matrix(parse_numeric_csv(path, true)));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write file: " + tmp);
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("rename failed: " + tmp + " -> " + path + " (" +
                      std::strerror(errno) + ")");
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

}  // namespace precis
