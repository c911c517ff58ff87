#include "priorisk/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace priorisk {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double to_double(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
}

int to_int(const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string emit_curve_csv(const std::vector<CurveSeries>& series) {
    std::string out = "series,label,n,value,std_error\n";
    for (size_t s = 0; s < series.size(); ++s)
        for (const CurvePoint& p : series[s].points) {
            out += std::to_string(s);
            out += ',';
            out += series[s].label;
            out += ',';
            out += std::to_string(p.n);
            out += ',';
            out += format_double(p.value);
            out += ',';
            out += format_double(p.std_error);
            out += '\n';
        }
    return out;
}

std::vector<CurveSeries> parse_curve_csv(const std::string& text) {
    std::vector<std::string> rows = lines_of(text);
    if (rows.empty() || rows.front() != "series,label,n,value,std_error")
        throw std::invalid_argument("bad curve header");
    std::vector<CurveSeries> out;
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].empty()) continue;
        std::vector<std::string> f = split(rows[r], ',');
        if (f.size() != 5) throw std::invalid_argument("bad curve row: " + rows[r]);
        size_t idx = static_cast<size_t>(to_int(f[0]));
        if (idx >= out.size()) {
            out.resize(idx + 1);
            out[idx].label = f[1];
        }
        out[idx].points.push_back({to_int(f[2]), to_double(f[3]), to_double(f[4])});
    }
    return out;
}

std::string emit_loss_matrix_csv(const LossMatrixCsv& m) {
    if (m.entries.size() != m.thetas.size()) throw std::invalid_argument("row count mismatch");
    std::string out = "theta";
    for (const std::string& a : m.action_labels) {
        out += ',';
        out += a;
    }
    out += '\n';
    for (size_t r = 0; r < m.entries.size(); ++r) {
        if (m.entries[r].size() != m.action_labels.size())
            throw std::invalid_argument("column count mismatch");
        out += format_double(m.thetas[r]);
        for (double v : m.entries[r]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

LossMatrixCsv parse_loss_matrix_csv(const std::string& text) {
    std::vector<std::string> rows = lines_of(text);
    if (rows.empty()) throw std::invalid_argument("empty loss matrix");
    std::vector<std::string> head = split(rows.front(), ',');
    if (head.size() < 2) throw std::invalid_argument("loss matrix needs at least one action column");
    LossMatrixCsv m;
    m.action_labels.assign(head.begin() + 1, head.end());
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].empty()) continue;
        std::vector<std::string> f = split(rows[r], ',');
        if (f.size() != head.size()) throw std::invalid_argument("ragged loss matrix row");
        m.thetas.push_back(to_double(f[0]));
        std::vector<double> entry;
        for (size_t c = 1; c < f.size(); ++c) entry.push_back(to_double(f[c]));
        m.entries.push_back(std::move(entry));
    }
    if (m.entries.empty()) throw std::invalid_argument("loss matrix has no rows");
    return m;
}

std::string emit_regressor_csv(const RegressorMatrix& Z) {
    std::string out;
    for (int i = 0; i < Z.observations(); ++i) {
        for (int j = 0; j < Z.dims(); ++j) {
            if (j) out += ',';
            out += format_double(Z.z(i, j));
        }
        out += '\n';
    }
    return out;
}

RegressorMatrix parse_regressor_csv(const std::string& text) {
    std::vector<std::string> rows = lines_of(text);
    std::vector<double> vals;
    int cols = -1, n = 0;
    for (const std::string& row : rows) {
        if (row.empty()) continue;
        std::vector<std::string> f = split(row, ',');
        if (cols < 0) cols = static_cast<int>(f.size());
        if (static_cast<int>(f.size()) != cols) throw std::invalid_argument("ragged regressor row");
        for (const std::string& s : f) vals.push_back(to_double(s));
        ++n;
    }
    if (n == 0) throw std::invalid_argument("empty regressor matrix");
    return RegressorMatrix(n, cols, std::move(vals));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

}  // namespace priorisk
