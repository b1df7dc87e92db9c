#include "roughcp/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace roughcp {

namespace {

std::string format_fixed(double v, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

double parse_cell(const std::string& cell, const std::string& path) {
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw std::runtime_error("malformed number '" + cell + "' in " + path);
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

std::string format_number(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const RoughnessMatrix& matrix, const std::string& path, bool as_hurst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "angle_deg";
    for (int t : matrix.delays) out << "," << t;
    out << "\n";
    const Eigen::ArrayXXd values = as_hurst ? matrix.hurst() : matrix.p;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out << format_fixed(matrix.angles_deg(i), 6);
        for (Eigen::Index j = 0; j < values.cols(); ++j) out << "," << format_number(values(i, j));
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

RoughnessMatrix read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path);
    const auto header = split_line(line);
    if (header.empty() || header[0] != "angle_deg")
        throw std::runtime_error("unexpected CSV header in " + path);

    RoughnessMatrix matrix;
    for (std::size_t j = 1; j < header.size(); ++j)
        matrix.delays.push_back(static_cast<int>(parse_cell(header[j], path)));

    std::vector<double> angles;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("ragged CSV row in " + path);
        angles.push_back(parse_cell(cells[0], path));
        std::vector<double> row;
        for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(parse_cell(cells[j], path));
        rows.push_back(std::move(row));
    }

    matrix.angles_deg.resize(static_cast<Eigen::Index>(angles.size()));
    matrix.p.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(matrix.delays.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        matrix.angles_deg(static_cast<Eigen::Index>(i)) = angles[i];
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            matrix.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return matrix;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows, const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (!comment.empty()) {
        std::string flat = comment;
        for (char& ch : flat)
            if (ch == '\n' || ch == '\r') ch = ' ';
        out << "# " << flat << "\n";
    }
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::invalid_argument("write_table_csv: ragged row");
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace roughcp
